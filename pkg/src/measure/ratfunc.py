"""有理関数体 Q(X) の元モジュール。

積分値はすべて X（= |t|）の有理関数として表す。
分子・分母は sympy の Poly（係数体 QQ）で持ち、分母はモニック・既約に保つ。
"""

from dataclasses import dataclass
from fractions import Fraction
from tokenize import TokenError
from typing import Any

from sympy import QQ, Poly, Rational, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from src.errors import DivisionByZero, ParseError

X = Symbol("X")

_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication)


def _poly(expr: Any) -> Poly:
    return Poly(expr, X, domain=QQ)


def _to_fraction(value: Any) -> Fraction:
    r = Rational(value)
    return Fraction(int(r.p), int(r.q))


@dataclass(frozen=True)
class RatFunc:
    """num / den。den はモニックで gcd(num, den) = 1。"""

    num: Poly
    den: Poly

    def __post_init__(self) -> None:
        num, den = _poly(self.num), _poly(self.den)
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero:
            object.__setattr__(self, "num", _poly(0))
            object.__setattr__(self, "den", _poly(1))
            return
        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        lc = den.LC()
        object.__setattr__(self, "num", num.quo_ground(lc))
        object.__setattr__(self, "den", den.quo_ground(lc))

    # =========================================================================
    # 生成
    # =========================================================================

    @classmethod
    def constant(cls, c: int | Fraction) -> "RatFunc":
        c = Fraction(c)
        return cls(_poly(Rational(c.numerator, c.denominator)), _poly(1))

    @classmethod
    def monomial(cls, c: int | Fraction, n: int) -> "RatFunc":
        """c·X^n（n は負でもよい）。"""
        c = Fraction(c)
        coeff = Rational(c.numerator, c.denominator)
        if n >= 0:
            return cls(_poly(coeff * X**n), _poly(1))
        return cls(_poly(coeff), _poly(X ** (-n)))

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls.constant(0)

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        """`-2*X`、`(X^2 + 1)/(X - 1)` のような文字列を解析する。"""
        try:
            expr = parse_expr(
                text, local_dict={"X": X}, transformations=_TRANSFORMATIONS
            )
        except (SympifyError, SyntaxError, TypeError, TokenError) as e:
            message = f"cannot parse rational function {text!r}: {e}"
            raise ParseError(message, text=text) from e
        if expr.free_symbols - {X}:
            names = sorted(str(s) for s in expr.free_symbols - {X})
            raise ParseError(f"unknown symbols {names} in {text!r}", text=text)
        num, den = expr.together().as_numer_denom()
        return cls(_poly(num), _poly(den))

    def _coerce(self, other: Any) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc.constant(other)

    # =========================================================================
    # 演算
    # =========================================================================

    def __add__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __radd__(self, other: Any) -> "RatFunc":
        return self + other

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: Any) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "RatFunc":
        return self._coerce(other) + (-self)

    def __mul__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    def __rmul__(self, other: Any) -> "RatFunc":
        return self * other

    def __truediv__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        if o.is_zero:
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc.constant(1) / (self ** (-n))
        return RatFunc(self.num**n, self.den**n)

    # =========================================================================
    # 属性
    # =========================================================================

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def evaluate(self, x0: int | Fraction) -> Fraction:
        """X に有理数 x0 を代入する。"""
        x0 = Fraction(x0)
        point = Rational(x0.numerator, x0.denominator)
        den = self.den.eval(point)
        if den == 0:
            raise DivisionByZero(f"{self} has a pole at X = {x0}")
        return _to_fraction(self.num.eval(point) / den)

    def laurent_terms(self) -> dict[int, Fraction] | None:
        """分母が X の冪なら {指数: 係数}、そうでなければ None。"""
        if len(self.den.terms()) != 1:
            return None
        shift = self.den.degree()
        return {
            k - shift: _to_fraction(c)
            for (k,), c in self.num.terms()
            if c != 0
        }

    def __str__(self) -> str:
        num = str(self.num.as_expr()).replace("**", "^")
        if self.den.degree() == 0:
            return num
        den = str(self.den.as_expr()).replace("**", "^")
        if len(self.num.terms()) > 1:
            num = f"({num})"
        if len(self.den.terms()) > 1:
            den = f"({den})"
        return f"{num}/{den}"
