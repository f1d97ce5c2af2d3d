"""オラクルの格子モジュール。

格子点はすべて厳密な元で、PADIC の K の桁は負の代表元も含むように
対称な剰余代表系をとる（-1 を中心とする類にも点が入る）。
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from src.config.settings import get_settings
from src.errors import GridTooLarge, ParseError
from src.tower import FieldTowerSpec, MidElement, PadicElement, TwoElement, mid_digits


@dataclass(frozen=True)
class GridSpec:
    """t 進の桁数 t_depth と π_K 進の桁数 u_depth、列挙サイズの上限 cap。"""

    t_depth: int
    u_depth: int
    cap: int | None = None

    def __post_init__(self) -> None:
        if self.t_depth < 1 or self.u_depth < 1:
            raise ParseError(
                f"grid depths must be positive, got {self.t_depth}:{self.u_depth}"
            )

    @classmethod
    def parse(cls, text: str, cap: int | None = None) -> "GridSpec":
        """`4:2` の形の指定を解析する。"""
        parts = text.split(":")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise ParseError(f"grid must look like t:u, got {text!r}", text=text)
        return cls(int(parts[0]), int(parts[1]), cap)

    @property
    def limit(self) -> int:
        return self.cap if self.cap is not None else get_settings().grid_cap

    def size(self, field: FieldTowerSpec) -> int:
        return field.q ** (self.t_depth * self.u_depth)

    def check(self, field: FieldTowerSpec) -> None:
        """列挙の前に q_K^{t_depth·u_depth} ≤ cap を確かめる。"""
        size = self.size(field)
        if size > self.limit:
            raise GridTooLarge(size, self.limit)

    def ensure(self, count: int) -> None:
        if count > self.limit:
            raise GridTooLarge(count, self.limit)

    def __str__(self) -> str:
        return f"{self.t_depth}:{self.u_depth}"


def signed_digits(field: FieldTowerSpec, u_depth: int) -> list[MidElement]:
    """O_K / π_K^{u_depth} の代表元（PADIC は対称な代表系）。"""
    if not field.is_padic:
        return mid_digits(field, u_depth)
    modulus = field.p**u_depth
    low = (modulus - 1) // 2
    return [PadicElement(field, Fraction(k - low)) for k in range(modulus)]


def integral_points(field: FieldTowerSpec, grid: GridSpec) -> list[TwoElement]:
    """O_F の t^0..t^{t_depth-1} の桁を格子の代表元でとった点。"""
    grid.check(field)
    digits = signed_digits(field, grid.u_depth)
    return [
        TwoElement(field, dict(enumerate(coeffs)))
        for coeffs in product(digits, repeat=grid.t_depth)
    ]
