"""F 上の持ち上げ関数と F 値の積分モジュール。

f^{a,n} は a + t^n·O_F に台を持ち、a + t^n x で f(x̄) をとる関数。
∫^F f^{a,n}(x) dx = ∫_K f(u) du · X^n であり、積分は Q(X) に値をとる。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal

from src.config.settings import get_settings
from src.errors import DivisionByZero, InsufficientPrecision, InvalidInput
from src.logging.logger import get_logger
from src.measure.ratfunc import RatFunc
from src.measure.schwartz import SBFunction, SBFunction2, mid_valuation
from src.tower import FieldTowerSpec, TwoElement
from src.tower.valuation import AtLeast

logger = get_logger(__name__)


# =============================================================================
# 絶対値
# =============================================================================


def abs_value(alpha: TwoElement) -> tuple[Fraction, int]:
    """|α| = |res(α t^{-ν(α)})|_K · X^{ν(α)} を (r, n) で返す。"""
    v = alpha.valuation()
    if isinstance(v, AtLeast):
        if v.is_exact_zero or alpha.is_exact_zero():
            raise DivisionByZero("absolute value of zero")
        raise InsufficientPrecision(required=(v.n or 0) + 1)
    leading = alpha.coefficient(v.n)
    e = mid_valuation(leading)
    assert e is not None
    return Fraction(alpha.field.q) ** (-e), v.n


def abs_value_ratfunc(alpha: TwoElement) -> RatFunc:
    r, n = abs_value(alpha)
    return RatFunc.monomial(r, n)


def _section_value(
    f: SBFunction, a: TwoElement, n: int, y: TwoElement
) -> Fraction:
    """f^{a,n}(y)。"""
    diff = y - a
    v = diff.valuation()
    if v.below(n):
        return Fraction(0)
    if not v.at_least(n):
        raise InsufficientPrecision(required=n)
    if diff.precision is not None and diff.precision <= n:
        raise InsufficientPrecision(required=n + 1)
    return f.evaluate(diff.shift(-n).coefficient(0))


# =============================================================================
# 持ち上げ
# =============================================================================


@dataclass(frozen=True)
class LiftedTerm:
    """f^{a,n}。a は t^n を法として簡約し、t^n の桁は f の平行移動に吸収する。"""

    f: SBFunction
    a: TwoElement
    n: int

    def __post_init__(self) -> None:
        digit = self.a.coefficient(self.n)
        f = self.f
        if not digit.is_exact_zero():
            f = f.shift(-digit)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "a", self.a.reduced(self.n))

    @property
    def field(self) -> FieldTowerSpec:
        return self.f.field

    def evaluate(self, y: TwoElement) -> Fraction:
        return _section_value(self.f, self.a, self.n, y)

    def integral(self) -> RatFunc:
        return RatFunc.monomial(self.f.haar_integral(), self.n)

    def translate(self, b: TwoElement) -> "LiftedTerm":
        """x ↦ f^{a,n}(x - b) = f^{a+b,n}。"""
        return LiftedTerm(self.f, self.a + b, self.n)

    def scale(self, alpha: TwoElement) -> "LiftedTerm":
        """x ↦ f^{a,n}(αx)。"""
        v = alpha.valuation()
        if isinstance(v, AtLeast):
            if alpha.is_exact_zero():
                raise DivisionByZero("scaling by zero")
            raise InsufficientPrecision(required=(v.n or 0) + 1)
        m = v.n
        new_n = self.n - m
        eps = alpha.coefficient(m)
        if self.a.is_exact_zero():
            center = self.a
        else:
            a_val = self.a.valuation().n
            inverse = alpha.inv(
                precision=new_n + 1 - a_val, mid_precision=get_settings().mid_precision
            )
            center = self.a * inverse
        return LiftedTerm(self.f.scale(eps), center, new_n)

    def __str__(self) -> str:
        return f"lift[{self.a}, {self.n}]({self.f})"


def char_O_F(field: FieldTowerSpec) -> LiftedTerm:
    """Char_{O_F} = {0} の点質量の (0, -1) での持ち上げ。"""
    return LiftedTerm(SBFunction.point_mass(field.mid(0)), field.two(0), -1)


@dataclass(frozen=True)
class IntegrableFunctionF:
    """Σ coeff·f^{a,n}（coeff ∈ Q(X)）。"""

    field: FieldTowerSpec
    terms: tuple[tuple[RatFunc, LiftedTerm], ...] = ()

    @classmethod
    def of(cls, term: LiftedTerm, coeff: Any = 1) -> "IntegrableFunctionF":
        c = coeff if isinstance(coeff, RatFunc) else RatFunc.constant(coeff)
        return cls(term.field, ((c, term),))

    def __add__(self, other: "IntegrableFunctionF") -> "IntegrableFunctionF":
        return IntegrableFunctionF(self.field, self.terms + other.terms)

    def __mul__(self, c: Any) -> "IntegrableFunctionF":
        return IntegrableFunctionF(
            self.field, tuple((coeff * c, term) for coeff, term in self.terms)
        )

    def __rmul__(self, c: Any) -> "IntegrableFunctionF":
        return self * c

    def __neg__(self) -> "IntegrableFunctionF":
        return self * -1

    def __sub__(self, other: "IntegrableFunctionF") -> "IntegrableFunctionF":
        return self + (-other)


def integral_F(g: IntegrableFunctionF) -> RatFunc:
    """∫^F g(x) dx = Σ coeff·∫f·X^n。"""
    total = RatFunc.zero()
    for coeff, term in g.terms:
        total = total + coeff * term.integral()
    return total


def translate(g: IntegrableFunctionF, a: TwoElement) -> IntegrableFunctionF:
    """x ↦ g(x - a)。"""
    return IntegrableFunctionF(g.field, tuple((c, t.translate(a)) for c, t in g.terms))


def scale(g: IntegrableFunctionF, alpha: TwoElement) -> IntegrableFunctionF:
    """x ↦ g(αx)。積分は |α|^{-1} 倍になる。"""
    return IntegrableFunctionF(g.field, tuple((c, t.scale(alpha)) for c, t in g.terms))


def evaluate(g: IntegrableFunctionF, x: TwoElement) -> RatFunc | Fraction:
    """g(x)。係数がすべて定数なら有理数、そうでなければ有理関数。"""
    total = RatFunc.zero()
    for coeff, term in g.terms:
        value = term.evaluate(x)
        if value:
            total = total + coeff * value
    if total.is_constant:
        return total.evaluate(0)
    return total


# =============================================================================
# F×F 上の持ち上げ
# =============================================================================


@dataclass(frozen=True)
class Lifted2Term:
    """f^{(a1,a2),(n1,n2)}。"""

    f: SBFunction2
    a: tuple[TwoElement, TwoElement]
    n: tuple[int, int]

    def evaluate(self, x: TwoElement, y: TwoElement) -> Fraction:
        (a1, a2), (n1, n2) = self.a, self.n
        for z, a, n in ((x, a1, n1), (y, a2, n2)):
            if (z - a).valuation().below(n):
                return Fraction(0)
        u = (x - a1).shift(-n1).coefficient(0)
        w = (y - a2).shift(-n2).coefficient(0)
        return self.f.evaluate(u, w)

    def inner_section(self, order: Literal["dxdy", "dydx"]) -> tuple[LiftedTerm, int]:
        """内側の積分を実行した後の外側変数の関数（持ち上げ）と X の指数。"""
        (a1, a2), (n1, n2) = self.a, self.n
        if order == "dxdy":
            return LiftedTerm(self.f.marginal_second(), a2, n2), n1
        return LiftedTerm(self.f.marginal_first(), a1, n1), n2


def repeated_integral_2(
    g: Lifted2Term, order: Literal["dxdy", "dydx"] = "dxdy"
) -> RatFunc:
    """∫∫ g の反復積分。どちらの順序でも ∫∫f·X^{n1+n2}。"""
    if order not in ("dxdy", "dydx"):
        raise InvalidInput(f"unknown integration order {order!r}")
    section, inner_exponent = g.inner_section(order)
    result = section.integral() * RatFunc.monomial(1, inner_exponent)
    logger.debug(f"repeated_integral_2({order}) = {result}")
    return result
