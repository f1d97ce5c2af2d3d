"""テストパッケージ。"""
