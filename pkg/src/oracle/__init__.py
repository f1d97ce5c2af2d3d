"""oracle パッケージ。"""

from src.oracle.decomposition import verify_decomposition
from src.oracle.grid import GridSpec
from src.oracle.laws import verify_integral_laws
from src.oracle.repeated import verify_repeated
from src.oracle.report import OracleReport, OracleStatus, Witness

__all__ = [
    "GridSpec",
    "OracleReport",
    "OracleStatus",
    "Witness",
    "verify_decomposition",
    "verify_integral_laws",
    "verify_repeated",
]
