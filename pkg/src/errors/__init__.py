"""errors パッケージ。"""

from src.errors.exceptions import (
    DivisionByZero,
    FubiniError,
    GridTooLarge,
    InsufficientPrecision,
    InvalidInput,
    NegativeValuation,
    NotContained,
    NotSimpleRoot,
    ParseError,
    PatternNotRecognized,
    PurelyInseparable,
    RootSearchBudgetExceeded,
    UnknownScenario,
    UnsupportedFiberStructure,
)

__all__ = [
    "DivisionByZero",
    "FubiniError",
    "GridTooLarge",
    "InsufficientPrecision",
    "InvalidInput",
    "NegativeValuation",
    "NotContained",
    "NotSimpleRoot",
    "ParseError",
    "PatternNotRecognized",
    "PurelyInseparable",
    "RootSearchBudgetExceeded",
    "UnknownScenario",
    "UnsupportedFiberStructure",
]
