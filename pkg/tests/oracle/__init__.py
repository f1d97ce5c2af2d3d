"""オラクルテストパッケージ。"""
