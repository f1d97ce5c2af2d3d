"""フビニ判定テストパッケージ。"""
