"""付値結果モジュール。

有限精度の元に対して決定可能な付値を表す。
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Finite:
    """確定した付値 n。"""

    n: int

    def at_least(self, k: int) -> bool:
        """付値が k 以上であることが確定しているか。"""
        return self.n >= k

    def below(self, k: int) -> bool:
        """付値が k 未満であることが確定しているか。"""
        return self.n < k

    @property
    def bound(self) -> int:
        return self.n

    def __str__(self) -> str:
        return str(self.n)


@dataclass(frozen=True)
class AtLeast:
    """精度 n まで全桁が零であることだけが分かっている状態。

    n が None のときは厳密な零（付値 +∞）を表す。
    """

    n: int | None

    def at_least(self, k: int) -> bool:
        return self.n is None or self.n >= k

    def below(self, k: int) -> bool:
        return False

    @property
    def is_exact_zero(self) -> bool:
        return self.n is None

    @property
    def bound(self) -> int | None:
        return self.n

    def __str__(self) -> str:
        return "inf" if self.n is None else f">={self.n}"


ValuationResult = Finite | AtLeast


def min_precision(*values: int | None) -> int | None:
    """None（無限精度）を除いた最小値を返す。"""
    finite = [v for v in values if v is not None]
    return min(finite) if finite else None


def product_precision(
    prec_x: int | None,
    val_x: ValuationResult,
    prec_y: int | None,
    val_y: ValuationResult,
) -> int | None:
    """積 xy の精度を返す。

    x = x0 + O(π^Nx) のとき xy の精度は min(Nx + ν(y), Ny + ν(x))。
    """
    if isinstance(val_x, AtLeast) and val_x.is_exact_zero:
        return None
    if isinstance(val_y, AtLeast) and val_y.is_exact_zero:
        return None
    candidates: list[int] = []
    if prec_x is not None:
        candidates.append(prec_x + _lower(val_y))
    if prec_y is not None:
        candidates.append(prec_y + _lower(val_x))
    return min(candidates) if candidates else None


def _lower(value: ValuationResult) -> int:
    bound = value.bound
    assert bound is not None
    return bound
