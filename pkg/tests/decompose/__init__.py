"""逆像分解テストパッケージ。"""
