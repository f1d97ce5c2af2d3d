"""サービステストパッケージ。"""
