"""tower パッケージ。"""

from src.tower.ball import Ball
from src.tower.field import FieldTowerSpec, Level, MiddleKind
from src.tower.grid import digit_grid, mid_digits
from src.tower.mid import LaurentElement, MidElement, PadicElement
from src.tower.parser import parse_element, parse_field, parse_mid, parse_poly_terms
from src.tower.residue import ResidueField
from src.tower.two import TwoElement, working_precision
from src.tower.valuation import AtLeast, Finite, ValuationResult

__all__ = [
    "AtLeast",
    "Ball",
    "FieldTowerSpec",
    "Finite",
    "LaurentElement",
    "Level",
    "MidElement",
    "MiddleKind",
    "PadicElement",
    "ResidueField",
    "TwoElement",
    "ValuationResult",
    "digit_grid",
    "mid_digits",
    "parse_element",
    "parse_field",
    "parse_mid",
    "parse_poly_terms",
    "working_precision",
]
