"""`python -m src.cli` のエントリーポイント。"""

from src.cli.app import main

raise SystemExit(main())
