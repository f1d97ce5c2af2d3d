"""スキーマテストパッケージ。"""
