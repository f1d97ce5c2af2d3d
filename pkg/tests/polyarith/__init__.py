"""多項式算術テストパッケージ。"""
