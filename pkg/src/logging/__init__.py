"""logging パッケージ。"""

from src.logging.logger import get_logger

__all__ = ["get_logger"]
