"""一変数多項式モジュール。

係数は K または F の元。零であることが否定できない係数は保持しないため、
最高次係数は常に非零であることが確定している。
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any

from src.tower import FieldTowerSpec, Level, MidElement, TwoElement, parse_poly_terms
from src.tower.parser import Constant

Coefficient = MidElement | TwoElement


def _nonzero(c: Coefficient) -> bool:
    if isinstance(c, TwoElement):
        return bool(c.coeffs)
    return c.provably_nonzero()


@dataclass(frozen=True)
class Poly:
    """K[X] または F[X] の多項式。coeffs は (次数, 係数) の昇順タプル。"""

    field: FieldTowerSpec
    level: Level
    coeffs: tuple[tuple[int, Coefficient], ...] = ()

    def __post_init__(self) -> None:
        raw = self.coeffs
        items: Iterable[tuple[int, Coefficient]] = (
            raw.items() if isinstance(raw, Mapping) else raw
        )
        cleaned = {k: c for k, c in items if _nonzero(c)}
        object.__setattr__(self, "coeffs", tuple(sorted(cleaned.items())))

    # =========================================================================
    # 生成
    # =========================================================================

    @classmethod
    def zero(cls, field: FieldTowerSpec, level: Level) -> "Poly":
        return cls(field, level)

    @classmethod
    def x(cls, field: FieldTowerSpec, level: Level) -> "Poly":
        return cls(field, level, {1: cls._one(field, level)})

    @classmethod
    def constant(cls, field: FieldTowerSpec, level: Level, c: Any) -> "Poly":
        return cls(field, level, {0: cls._lift(field, level, c)})

    @classmethod
    def parse(
        cls,
        text: str,
        field: FieldTowerSpec,
        level: Level = Level.F,
        constants: Mapping[str, Constant] | None = None,
    ) -> "Poly":
        """多項式リテラル `X^3 + X^2 + t^2` を解析する。"""
        terms = parse_poly_terms(text, field, constants, allow_t=level == Level.F)
        if level == Level.F:
            return cls(field, level, terms)
        return cls(field, level, {k: c.coefficient(0) for k, c in terms.items()})

    @staticmethod
    def _one(field: FieldTowerSpec, level: Level) -> Coefficient:
        return field.two(1) if level == Level.F else field.mid(1)

    @staticmethod
    def _lift(field: FieldTowerSpec, level: Level, c: Any) -> Coefficient:
        if level == Level.F:
            return field.two(c)
        if isinstance(c, TwoElement):
            raise TypeError("F-element used as a K-polynomial coefficient")
        return field.mid(c)

    def _coerce(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(self.field, self.level, other)

    # =========================================================================
    # 属性
    # =========================================================================

    @property
    def degree(self) -> int:
        """次数（零多項式は -1）。"""
        return self.coeffs[-1][0] if self.coeffs else -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def coefficient(self, k: int) -> Coefficient:
        return dict(self.coeffs).get(k, self._lift(self.field, self.level, 0))

    @property
    def leading(self) -> Coefficient:
        return self.coeffs[-1][1]

    def terms(self) -> dict[int, Coefficient]:
        return dict(self.coeffs)

    # =========================================================================
    # 演算
    # =========================================================================

    def __add__(self, other: Any) -> "Poly":
        o = self._coerce(other)
        merged = self.terms()
        for k, c in o.coeffs:
            merged[k] = merged[k] + c if k in merged else c
        return Poly(self.field, self.level, merged)

    def __radd__(self, other: Any) -> "Poly":
        return self + other

    def __neg__(self) -> "Poly":
        return Poly(self.field, self.level, {k: -c for k, c in self.coeffs})

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._coerce(other) + (-self)

    def __mul__(self, other: Any) -> "Poly":
        o = self._coerce(other)
        out: dict[int, Coefficient] = {}
        for i, c in self.coeffs:
            for j, d in o.coeffs:
                term = c * d
                out[i + j] = out[i + j] + term if i + j in out else term
        return Poly(self.field, self.level, out)

    def __rmul__(self, other: Any) -> "Poly":
        return self * other

    def __pow__(self, n: int) -> "Poly":
        result = Poly.constant(self.field, self.level, 1)
        for _ in range(n):
            result = result * self
        return result

    def map_coefficients(self, fn, level: Level | None = None) -> "Poly":
        return Poly(self.field, level or self.level, {k: fn(c) for k, c in self.coeffs})

    def derivative(self) -> "Poly":
        return Poly(
            self.field,
            self.level,
            {k - 1: c * k for k, c in self.coeffs if k > 0},
        )

    def evaluate(self, x: Any) -> Coefficient:
        """ホーナー法で値を求める。"""
        result = self._lift(self.field, self.level, 0)
        if self.is_zero:
            return result
        terms = self.terms()
        for k in range(self.degree, -1, -1):
            result = result * x
            if k in terms:
                result = result + terms[k]
        return result

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(X)) をホーナー法で求める。"""
        result = Poly.zero(self.field, inner.level)
        terms = self.terms()
        for k in range(self.degree, -1, -1):
            result = result * inner
            if k in terms:
                result = result + terms[k]
        return result

    def compose_linear(self, a: Coefficient, c: int | Coefficient) -> "Poly":
        """h(a + s·X) を返す。c が整数なら s = t^c（F）または π_K^c（K）。"""
        if isinstance(c, int):
            step = self.field.t(c) if self.level == Level.F else self.field.pi(c)
        else:
            step = c
        inner = Poly(self.field, self.level, {0: a, 1: step})
        return self.compose(inner)

    def shift_coefficients(self, k: int) -> "Poly":
        """各係数に一意化元の k 乗を掛ける。"""
        return self.map_coefficients(lambda c: c.shift(k))

    def reduce(self) -> "Poly":
        """F[X] の整係数多項式の剰余（K[X] への像）。"""
        assert self.level == Level.F
        return self.map_coefficients(lambda c: c.residue(), Level.K)

    def embed(self) -> "Poly":
        """K[X] を F[X] に定数係数として埋め込む。"""
        assert self.level == Level.K
        return self.map_coefficients(self.field.two, Level.F)

    def truncate_coefficients(self, n: int) -> "Poly":
        return self.map_coefficients(lambda c: c.truncate(n))

    def min_valuation(self, start: int = 0) -> int | None:
        """次数 start 以上の係数の付値の最小値。"""
        values = [c.valuation().n for k, c in self.coeffs if k >= start]
        return min(values) if values else None

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in reversed(self.coeffs):
            coeff = str(c)
            if k == 0:
                parts.append(coeff if " " not in coeff else f"({coeff})")
                continue
            mono = "X" if k == 1 else f"X^{k}"
            if coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append(f"-{mono}")
            elif " " in coeff:
                parts.append(f"({coeff})*{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace(" + -", " - ")
