"""APIテストパッケージ。"""
