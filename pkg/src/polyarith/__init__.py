"""polyarith パッケージ。"""

from src.polyarith.hensel import hensel_lift
from src.polyarith.poly import Poly
from src.polyarith.roots import Root, is_purely_inseparable, roots_over_K
from src.polyarith.taylor import TaylorNormalization, reduce_poly, taylor_normalize

__all__ = [
    "Poly",
    "Root",
    "TaylorNormalization",
    "hensel_lift",
    "is_purely_inseparable",
    "reduce_poly",
    "roots_over_K",
    "taylor_normalize",
]
