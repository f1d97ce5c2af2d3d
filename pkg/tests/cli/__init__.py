"""CLIテストパッケージ。"""
