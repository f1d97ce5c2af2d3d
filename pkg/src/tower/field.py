"""体の塔 F_q → K → F = K((t)) の仕様モジュール。"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING

from sympy import isprime

from src.errors import InvalidInput
from src.tower.residue import ResidueField

if TYPE_CHECKING:
    from src.tower.mid import MidElement
    from src.tower.two import TwoElement


class MiddleKind(str, Enum):
    """中間体 K の種類。"""

    PADIC = "padic"
    LAURENT = "laurent"


class Level(str, Enum):
    """元・多項式が属する階層。"""

    K = "K"
    F = "F"


@dataclass(frozen=True)
class FieldTowerSpec:
    """体の塔の仕様。

    PADIC は K = Q_p（q = p）、LAURENT は K = F_q((u))。
    """

    p: int
    f: int = 1
    kind: MiddleKind = MiddleKind.PADIC

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise InvalidInput(f"{self.p} is not prime")
        if self.f < 1:
            raise InvalidInput(f"residue degree must be positive, got {self.f}")
        if self.kind == MiddleKind.PADIC and self.f != 1:
            raise InvalidInput("PADIC middle field requires q = p")

    @classmethod
    def padic(cls, p: int) -> "FieldTowerSpec":
        return cls(p, 1, MiddleKind.PADIC)

    @classmethod
    def laurent(cls, p: int, f: int = 1) -> "FieldTowerSpec":
        return cls(p, f, MiddleKind.LAURENT)

    @property
    def q(self) -> int:
        """K の剰余体の位数 q_K。"""
        return self.p**self.f

    @property
    def char(self) -> int:
        """K の標数。"""
        return 0 if self.kind == MiddleKind.PADIC else self.p

    @property
    def is_padic(self) -> bool:
        return self.kind == MiddleKind.PADIC

    @cached_property
    def residue(self) -> ResidueField:
        return ResidueField(self.p, self.f)

    # =========================================================================
    # K の元
    # =========================================================================

    def mid(self, value: "int | Fraction | MidElement") -> "MidElement":
        """整数・有理数を K の厳密な元に変換する。"""
        from src.tower.mid import LaurentElement, MidElement, PadicElement

        if isinstance(value, MidElement):
            return value
        if self.is_padic:
            return PadicElement(self, Fraction(value))
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise InvalidInput(f"{value} is not defined in characteristic {self.p}")
        code = (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return LaurentElement(self, {0: code})

    def digit(self, d: int) -> "MidElement":
        """剰余体の元 d の K への標準的な持ち上げ。"""
        from src.tower.mid import LaurentElement, PadicElement

        if self.is_padic:
            return PadicElement(self, Fraction(d))
        return LaurentElement(self, {0: d})

    def pi(self, n: int = 1) -> "MidElement":
        """K の一意化元の冪 π_K^n。"""
        from src.tower.mid import LaurentElement, PadicElement

        if self.is_padic:
            return PadicElement(self, Fraction(self.p) ** n)
        return LaurentElement(self, {n: 1})

    # =========================================================================
    # F の元
    # =========================================================================

    def two(self, value: "int | Fraction | MidElement | TwoElement") -> "TwoElement":
        """K の元または有理数を F の厳密な定数に変換する。"""
        from src.tower.two import TwoElement

        if isinstance(value, TwoElement):
            return value
        return TwoElement(self, {0: self.mid(value)})

    def t(self, n: int = 1) -> "TwoElement":
        """F の一意化元の冪 t^n。"""
        from src.tower.two import TwoElement

        return TwoElement(self, {n: self.mid(1)})

    def __str__(self) -> str:
        if self.is_padic:
            return f"Qp({self.p})((t))"
        return f"Fq({self.p},{self.f})((u))((t))"
