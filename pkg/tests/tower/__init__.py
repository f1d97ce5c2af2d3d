"""体の塔テストパッケージ。"""
