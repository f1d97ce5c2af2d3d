"""src パッケージ。"""
