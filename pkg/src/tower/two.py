"""二次元局所体 F = K((t)) の元モジュール。

係数は K の元。作業精度 m で π_K^m を法として零になる係数は零の桁として
保持しない。近似根を代入した式の打ち消し合う係数はこれで消える。
それより粗い精度でしか零と分からない係数の桁は未知の桁とし、
元の t 進精度をその指数で打ち切る。
"""

from collections.abc import Iterable, Iterator, Mapping
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Any

from src.config.settings import get_settings
from src.errors import DivisionByZero, InsufficientPrecision, NegativeValuation
from src.tower.field import FieldTowerSpec
from src.tower.mid import MidElement
from src.tower.valuation import (
    AtLeast,
    Finite,
    ValuationResult,
    min_precision,
    product_precision,
)

_working_precision: ContextVar[int | None] = ContextVar(
    "working_precision", default=None
)


@contextmanager
def working_precision(m: int) -> Iterator[None]:
    """この文脈の中では π_K^m を法として零の係数を零の桁とみなす。"""
    token = _working_precision.set(m)
    try:
        yield
    finally:
        _working_precision.reset(token)


def _settled(c: MidElement) -> bool:
    """係数が作業精度で零と確定しているか。"""
    if c.is_exact_zero():
        return True
    m = _working_precision.get()
    if m is None:
        m = get_settings().mid_precision
    return c.valuation().at_least(m)


def _needs_parens(text: str) -> bool:
    return " + " in text or " - " in text or "O(" in text


@dataclass(frozen=True)
class TwoElement:
    """F の元。coeffs は (t 指数, K の元) の昇順タプル。"""

    field: FieldTowerSpec
    coeffs: tuple[tuple[int, MidElement], ...] = ()
    precision: int | None = None

    def __post_init__(self) -> None:
        raw = self.coeffs
        items: Iterable[tuple[int, MidElement]] = (
            raw.items() if isinstance(raw, Mapping) else raw
        )
        cleaned = {}
        precision = self.precision
        for exp, c in items:
            if precision is not None and exp >= precision:
                continue
            if c.provably_nonzero():
                cleaned[exp] = c
            elif not _settled(c):
                precision = exp
        kept = [
            (e, c) for e, c in cleaned.items() if precision is None or e < precision
        ]
        object.__setattr__(self, "coeffs", tuple(sorted(kept)))
        object.__setattr__(self, "precision", precision)

    def _coerce(self, other: Any) -> "TwoElement":
        if isinstance(other, TwoElement):
            return other
        return self.field.two(other)

    # =========================================================================
    # 付値・剰余
    # =========================================================================

    def valuation(self) -> ValuationResult:
        if self.coeffs:
            return Finite(self.coeffs[0][0])
        return AtLeast(self.precision)

    def residue(self) -> MidElement:
        """t^0 の係数（O_F → K の剰余写像）。"""
        v = self.valuation()
        if v.below(0):
            raise NegativeValuation(f"residue of {self} with negative valuation")
        if not v.at_least(0) or (self.precision is not None and self.precision < 1):
            raise InsufficientPrecision(required=1)
        return self.coefficient(0)

    def coefficient(self, k: int) -> MidElement:
        if self.precision is not None and k >= self.precision:
            raise InsufficientPrecision(required=k + 1)
        return dict(self.coeffs).get(k, self.field.mid(0))

    def is_integral(self) -> bool:
        """ν ≥ 0 が確定しているか。決定できなければ例外。"""
        v = self.valuation()
        if v.at_least(0):
            return True
        if v.below(0):
            return False
        raise InsufficientPrecision(required=0)

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.precision is None

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    # =========================================================================
    # 算術
    # =========================================================================

    def __add__(self, other: Any) -> "TwoElement":
        o = self._coerce(other)
        merged = dict(self.coeffs)
        for exp, c in o.coeffs:
            merged[exp] = merged[exp] + c if exp in merged else c
        precision = min_precision(self.precision, o.precision)
        return TwoElement(self.field, merged, precision)

    def __radd__(self, other: Any) -> "TwoElement":
        return self + other

    def __neg__(self) -> "TwoElement":
        return TwoElement(
            self.field, {exp: -c for exp, c in self.coeffs}, self.precision
        )

    def __sub__(self, other: Any) -> "TwoElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "TwoElement":
        return self._coerce(other) + (-self)

    def __mul__(self, other: Any) -> "TwoElement":
        o = self._coerce(other)
        if self.is_exact_zero() or o.is_exact_zero():
            return TwoElement(self.field)
        precision = product_precision(
            self.precision, self.valuation(), o.precision, o.valuation()
        )
        result: dict[int, MidElement] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in o.coeffs:
                exp = e1 + e2
                if precision is not None and exp >= precision:
                    continue
                term = c1 * c2
                result[exp] = result[exp] + term if exp in result else term
        return TwoElement(self.field, result, precision)

    def __rmul__(self, other: Any) -> "TwoElement":
        return self * other

    def __pow__(self, n: int) -> "TwoElement":
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.two(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(
        self, precision: int | None = None, mid_precision: int | None = None
    ) -> "TwoElement":
        """逆元を返す。

        Args:
            precision: 厳密な非単項式に対して求める t 進精度
            mid_precision: K 係数の逆元に用いる精度（LAURENT の非単項式係数用）

        Returns:
            TwoElement: 逆元（単項式なら厳密）
        """
        v = self.valuation()
        if isinstance(v, AtLeast):
            if v.is_exact_zero:
                raise DivisionByZero(f"inverse of exact zero in {self.field}")
            raise InsufficientPrecision(required=(v.n or 0) + 1)
        n = v.n
        if self.precision is None and len(self.coeffs) == 1:
            return TwoElement(self.field, {-n: self.coeffs[0][1].inv(mid_precision)})
        if self.precision is not None:
            target = self.precision - 2 * n
            if precision is not None:
                target = min(target, precision)
        elif precision is None:
            raise InsufficientPrecision(
                message=f"series inverse of {self} needs a target precision"
            )
        else:
            target = precision
        unit = {exp - n: c for exp, c in self.coeffs}
        lead_inv = unit[0].inv(mid_precision)
        series: list[MidElement] = []
        for k in range(max(target + n, 0)):
            if k == 0:
                series.append(lead_inv)
                continue
            acc = self.field.mid(0)
            for j in range(1, k + 1):
                if j in unit:
                    acc = acc + unit[j] * series[k - j]
            series.append(-(lead_inv * acc))
        return TwoElement(self.field, {k - n: c for k, c in enumerate(series)}, target)

    def scale(self, c: MidElement) -> "TwoElement":
        """K の元 c 倍。"""
        return TwoElement(
            self.field, {exp: c * a for exp, a in self.coeffs}, self.precision
        )

    def shift(self, k: int) -> "TwoElement":
        """t^k 倍。"""
        precision = None if self.precision is None else self.precision + k
        return TwoElement(
            self.field, {exp + k: c for exp, c in self.coeffs}, precision
        )

    def truncate(self, n: int) -> "TwoElement":
        return TwoElement(self.field, self.coeffs, min_precision(self.precision, n))

    def reduced(self, n: int) -> "TwoElement":
        """t^n を法とした厳密な代表元。"""
        if self.precision is not None and self.precision < n:
            raise InsufficientPrecision(required=n)
        return TwoElement(self.field, {e: c for e, c in self.coeffs if e < n})

    def digit_key(self) -> str:
        """整列用の標準桁文字列。"""
        return ";".join(f"{e}:{c}" for e, c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for exp, c in self.coeffs:
            coeff = str(c)
            if exp == 0:
                terms.append(f"({coeff})" if _needs_parens(coeff) else coeff)
                continue
            mono = "t" if exp == 1 else f"t^{exp}"
            if coeff == "1":
                terms.append(mono)
            elif coeff == "-1":
                terms.append(f"-{mono}")
            elif _needs_parens(coeff):
                terms.append(f"({coeff})*{mono}")
            else:
                terms.append(f"{coeff}*{mono}")
        if self.precision is not None:
            terms.append(f"O(t^{self.precision})")
        if not terms:
            return "0"
        return " + ".join(terms).replace(" + -", " - ")
