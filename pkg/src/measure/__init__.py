"""measure パッケージ。"""

from src.measure.lifted import (
    IntegrableFunctionF,
    Lifted2Term,
    LiftedTerm,
    abs_value,
    abs_value_ratfunc,
    char_O_F,
    evaluate,
    integral_F,
    repeated_integral_2,
    scale,
    translate,
)
from src.measure.ratfunc import RatFunc
from src.measure.schwartz import (
    SBFunction,
    SBFunction2,
    abs_mid,
    ball_floor,
    haar_integral,
    mid_valuation,
)

__all__ = [
    "IntegrableFunctionF",
    "Lifted2Term",
    "LiftedTerm",
    "RatFunc",
    "SBFunction",
    "SBFunction2",
    "abs_mid",
    "abs_value",
    "abs_value_ratfunc",
    "ball_floor",
    "char_O_F",
    "evaluate",
    "haar_integral",
    "integral_F",
    "mid_valuation",
    "repeated_integral_2",
    "scale",
    "translate",
]
