"""中間体 K の元モジュール。

PADIC の元は厳密な有理数（必要なら p^N を法とした精度つき）、
LAURENT の元は F_q 係数の有限ローラン多項式と u 進精度で表す。
"""

from abc import ABC, abstractmethod
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from sympy import multiplicity

from src.errors import DivisionByZero, InsufficientPrecision, NegativeValuation
from src.tower.field import FieldTowerSpec
from src.tower.valuation import (
    AtLeast,
    Finite,
    ValuationResult,
    min_precision,
    product_precision,
)


class MidElement(ABC):
    """K の元の共通インターフェース。"""

    field: FieldTowerSpec
    precision: int | None

    @abstractmethod
    def valuation(self) -> ValuationResult: ...

    @abstractmethod
    def residue(self) -> int: ...

    @abstractmethod
    def __add__(self, other: Any) -> "MidElement": ...

    @abstractmethod
    def __neg__(self) -> "MidElement": ...

    @abstractmethod
    def __mul__(self, other: Any) -> "MidElement": ...

    @abstractmethod
    def inv(self, precision: int | None = None) -> "MidElement": ...

    @abstractmethod
    def truncate(self, n: int) -> "MidElement": ...

    @abstractmethod
    def reduced(self, n: int) -> "MidElement": ...

    @abstractmethod
    def shift(self, k: int) -> "MidElement": ...

    @abstractmethod
    def coefficient(self, k: int) -> int: ...

    def _coerce(self, other: Any) -> "MidElement":
        if isinstance(other, MidElement):
            return other
        return self.field.mid(other)

    def __radd__(self, other: Any) -> "MidElement":
        return self + other

    def __sub__(self, other: Any) -> "MidElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "MidElement":
        return self._coerce(other) + (-self)

    def __rmul__(self, other: Any) -> "MidElement":
        return self * other

    def __pow__(self, n: int) -> "MidElement":
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.mid(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    def provably_nonzero(self) -> bool:
        return isinstance(self.valuation(), Finite)

    def is_exact_zero(self) -> bool:
        v = self.valuation()
        return isinstance(v, AtLeast) and v.is_exact_zero

    def _check_residue(self) -> None:
        v = self.valuation()
        if v.below(0):
            raise NegativeValuation(f"residue of {self} with negative valuation")
        if not v.at_least(0):
            raise InsufficientPrecision(required=1)
        if self.precision is not None and self.precision < 1:
            raise InsufficientPrecision(required=1)


# =============================================================================
# Q_p
# =============================================================================


def padic_valuation(value: Fraction, p: int) -> int:
    """非零有理数の p 進付値。"""
    return int(multiplicity(p, abs(value.numerator))) - int(
        multiplicity(p, value.denominator)
    )


def _padic_reduce(value: Fraction, p: int, n: int) -> Fraction:
    """p^n を法とした標準代表元 p^v·(0 ≤ unit < p^{n-v}) を返す。"""
    if value == 0:
        return Fraction(0)
    v = padic_valuation(value, p)
    if v >= n:
        return Fraction(0)
    unit = value / Fraction(p) ** v
    modulus = p ** (n - v)
    rep = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    return Fraction(rep) * Fraction(p) ** v


@dataclass(frozen=True)
class PadicElement(MidElement):
    """Q_p の元。precision が None なら厳密な有理数。"""

    field: FieldTowerSpec
    value: Fraction
    precision: int | None = None

    def __post_init__(self) -> None:
        value = Fraction(self.value)
        if self.precision is not None:
            value = _padic_reduce(value, self.field.p, self.precision)
        object.__setattr__(self, "value", value)

    def valuation(self) -> ValuationResult:
        if self.value != 0:
            return Finite(padic_valuation(self.value, self.field.p))
        return AtLeast(self.precision)

    def residue(self) -> int:
        self._check_residue()
        p = self.field.p
        return self.value.numerator * pow(self.value.denominator, -1, p) % p

    def __add__(self, other: Any) -> "PadicElement":
        o = self._coerce(other)
        assert isinstance(o, PadicElement)
        return PadicElement(
            self.field, self.value + o.value, min_precision(self.precision, o.precision)
        )

    def __neg__(self) -> "PadicElement":
        return PadicElement(self.field, -self.value, self.precision)

    def __mul__(self, other: Any) -> "PadicElement":
        o = self._coerce(other)
        assert isinstance(o, PadicElement)
        precision = product_precision(
            self.precision, self.valuation(), o.precision, o.valuation()
        )
        if self.is_exact_zero() or o.is_exact_zero():
            return PadicElement(self.field, Fraction(0))
        return PadicElement(self.field, self.value * o.value, precision)

    def inv(self, precision: int | None = None) -> "PadicElement":
        v = self.valuation()
        if isinstance(v, AtLeast):
            if v.is_exact_zero:
                raise DivisionByZero(f"inverse of exact zero in {self.field}")
            raise InsufficientPrecision(required=(v.n or 0) + 1)
        result_precision = None
        if self.precision is not None:
            result_precision = self.precision - 2 * v.n
        return PadicElement(self.field, 1 / self.value, result_precision)

    def truncate(self, n: int) -> "PadicElement":
        return PadicElement(self.field, self.value, min_precision(self.precision, n))

    def reduced(self, n: int) -> "PadicElement":
        if self.precision is not None and self.precision < n:
            raise InsufficientPrecision(required=n)
        return PadicElement(self.field, _padic_reduce(self.value, self.field.p, n))

    def shift(self, k: int) -> "PadicElement":
        precision = None if self.precision is None else self.precision + k
        value = self.value * Fraction(self.field.p) ** k
        return PadicElement(self.field, value, precision)

    def coefficient(self, k: int) -> int:
        """p 進展開の p^k の桁。"""
        p = self.field.p
        diff = self.reduced(k + 1).value - self.reduced(k).value
        return int(diff / Fraction(p) ** k)

    def __str__(self) -> str:
        if self.precision is None:
            return str(self.value)
        big_o = f"O({self.field.p}^{self.precision})"
        return big_o if self.value == 0 else f"{self.value} + {big_o}"


# =============================================================================
# F_q((u))
# =============================================================================


@dataclass(frozen=True)
class LaurentElement(MidElement):
    """F_q((u)) の元。coeffs は (指数, F_q の元) の昇順タプル。"""

    field: FieldTowerSpec
    coeffs: tuple[tuple[int, int], ...] = ()
    precision: int | None = None

    def __post_init__(self) -> None:
        raw = self.coeffs
        items: Iterable[tuple[int, int]] = (
            raw.items() if isinstance(raw, Mapping) else raw
        )
        q = self.field.q
        cleaned = {}
        for exp, c in items:
            c %= q
            if c == 0:
                continue
            if self.precision is not None and exp >= self.precision:
                continue
            cleaned[exp] = c
        object.__setattr__(self, "coeffs", tuple(sorted(cleaned.items())))

    @property
    def _fq(self):
        return self.field.residue

    def valuation(self) -> ValuationResult:
        if self.coeffs:
            return Finite(self.coeffs[0][0])
        return AtLeast(self.precision)

    def residue(self) -> int:
        self._check_residue()
        return dict(self.coeffs).get(0, 0)

    def coefficient(self, k: int) -> int:
        if self.precision is not None and k >= self.precision:
            raise InsufficientPrecision(required=k + 1)
        return dict(self.coeffs).get(k, 0)

    def __add__(self, other: Any) -> "LaurentElement":
        o = self._coerce(other)
        assert isinstance(o, LaurentElement)
        merged = dict(self.coeffs)
        for exp, c in o.coeffs:
            merged[exp] = self._fq.add(merged.get(exp, 0), c)
        return LaurentElement(
            self.field, merged, min_precision(self.precision, o.precision)
        )

    def __neg__(self) -> "LaurentElement":
        return LaurentElement(
            self.field,
            {exp: self._fq.neg(c) for exp, c in self.coeffs},
            self.precision,
        )

    def __mul__(self, other: Any) -> "LaurentElement":
        o = self._coerce(other)
        assert isinstance(o, LaurentElement)
        if self.is_exact_zero() or o.is_exact_zero():
            return LaurentElement(self.field)
        precision = product_precision(
            self.precision, self.valuation(), o.precision, o.valuation()
        )
        fq = self._fq
        result: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in o.coeffs:
                exp = e1 + e2
                if precision is not None and exp >= precision:
                    continue
                result[exp] = fq.add(result.get(exp, 0), fq.mul(c1, c2))
        return LaurentElement(self.field, result, precision)

    def inv(self, precision: int | None = None) -> "LaurentElement":
        """逆元。厳密な単項式以外は精度を要する。"""
        v = self.valuation()
        if isinstance(v, AtLeast):
            if v.is_exact_zero:
                raise DivisionByZero(f"inverse of exact zero in {self.field}")
            raise InsufficientPrecision(required=(v.n or 0) + 1)
        n = v.n
        fq = self._fq
        if self.precision is None and len(self.coeffs) == 1:
            return LaurentElement(self.field, {-n: fq.inv(self.coeffs[0][1])})
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
        lead_inv = fq.inv(unit[0])
        series: list[int] = []
        for k in range(max(target + n, 0)):
            if k == 0:
                series.append(lead_inv)
                continue
            acc = 0
            for j in range(1, k + 1):
                if j in unit:
                    acc = fq.add(acc, fq.mul(unit[j], series[k - j]))
            series.append(fq.neg(fq.mul(lead_inv, acc)))
        return LaurentElement(
            self.field, {k - n: c for k, c in enumerate(series)}, target
        )

    def truncate(self, n: int) -> "LaurentElement":
        return LaurentElement(self.field, self.coeffs, min_precision(self.precision, n))

    def reduced(self, n: int) -> "LaurentElement":
        if self.precision is not None and self.precision < n:
            raise InsufficientPrecision(required=n)
        return LaurentElement(self.field, {e: c for e, c in self.coeffs if e < n})

    def shift(self, k: int) -> "LaurentElement":
        precision = None if self.precision is None else self.precision + k
        return LaurentElement(
            self.field, {e + k: c for e, c in self.coeffs}, precision
        )

    def __str__(self) -> str:
        terms = []
        for exp, c in self.coeffs:
            coeff = self._fq.format(c)
            if exp == 0:
                terms.append(coeff)
                continue
            mono = "u" if exp == 1 else f"u^{exp}"
            terms.append(mono if coeff == "1" else f"{coeff}*{mono}")
        if self.precision is not None:
            terms.append(f"O(u^{self.precision})")
        return " + ".join(terms) if terms else "0"
