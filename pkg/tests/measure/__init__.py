"""測度・積分テストパッケージ。"""
