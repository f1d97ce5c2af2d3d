"""平行移動分数イデアル a + t^c·O_F のモジュール。"""

from dataclasses import dataclass

from src.errors import InsufficientPrecision
from src.tower import TwoElement


@dataclass(frozen=True)
class TranslatedIdeal:
    """a + t^c·O_F。中心は t^c を法として標準化する。"""

    center: TwoElement
    exponent: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", self.center.reduced(self.exponent))

    def contains(self, x: TwoElement) -> bool:
        return membership(x, self)

    def overlaps(self, other: "TranslatedIdeal") -> bool:
        """超距離性より、共通部分があれば一方が他方を含む。"""
        c = min(self.exponent, other.exponent)
        return (self.center - other.center).valuation().at_least(c)

    def contains_ideal(self, other: "TranslatedIdeal") -> bool:
        return other.exponent >= self.exponent and self.overlaps(other)

    def sort_key(self) -> tuple[int, str]:
        return (self.exponent, self.center.digit_key())

    def __str__(self) -> str:
        ideal = "O_F" if self.exponent == 0 else (
            "t*O_F" if self.exponent == 1 else f"t^{self.exponent}*O_F"
        )
        return ideal if not self.center.coeffs else f"{self.center} + {ideal}"


def membership(x: TwoElement, piece: TranslatedIdeal) -> bool:
    """x ∈ a + t^c·O_F を判定する。決定できなければ InsufficientPrecision。"""
    v = (x - piece.center).valuation()
    if v.at_least(piece.exponent):
        return True
    if v.below(piece.exponent):
        return False
    raise InsufficientPrecision(required=piece.exponent)
