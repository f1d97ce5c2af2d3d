"""K および K×K 上のシュワルツ・ブリュア階段関数モジュール。

球の指示関数の有限線形結合で表す。ハール測度は μ(O_K) = 1、
|π_K|_K = q_K^{-1} と正規化する。一点の項（測度零）も許す。
"""

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from src.errors import DivisionByZero, InsufficientPrecision
from src.tower import Ball, FieldTowerSpec, MidElement
from src.tower.valuation import AtLeast


def mid_valuation(x: MidElement) -> int | None:
    """K の元の付値。厳密な零は None、決定できなければ例外。"""
    v = x.valuation()
    if isinstance(v, AtLeast):
        if v.is_exact_zero:
            return None
        raise InsufficientPrecision(message=f"valuation of {x} is undecidable")
    return v.n


def abs_mid(x: MidElement) -> Fraction:
    """|x|_K。"""
    v = mid_valuation(x)
    if v is None:
        raise DivisionByZero("absolute value of exact zero requested as a unit")
    return Fraction(x.field.q) ** (-v)


def ball_floor(ball: Ball) -> int:
    """球の元の付値の下界。"""
    v = mid_valuation(ball.center)
    if ball.radius is None:
        return v if v is not None else 0
    return ball.radius if v is None else min(v, ball.radius)


@dataclass(frozen=True)
class SBFunction:
    """K 上の Σ value·Char_ball。"""

    field: FieldTowerSpec
    terms: tuple[tuple[Ball, Fraction], ...] = ()

    def __post_init__(self) -> None:
        cleaned = tuple(
            (ball, Fraction(value))
            for ball, value in self.terms
            if Fraction(value) != 0
        )
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def indicator(cls, ball: Ball, value: int | Fraction = 1) -> "SBFunction":
        return cls(ball.field, ((ball, Fraction(value)),))

    @classmethod
    def point_mass(cls, center: MidElement, value: int | Fraction = 1) -> "SBFunction":
        return cls(center.field, ((Ball.point(center), Fraction(value)),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def haar_integral(self) -> Fraction:
        return sum((value * ball.volume() for ball, value in self.terms), Fraction(0))

    def evaluate(self, x: MidElement) -> Fraction:
        return sum(
            (value for ball, value in self.terms if ball.contains(x)), Fraction(0)
        )

    # =========================================================================
    # 演算
    # =========================================================================

    def __add__(self, other: "SBFunction") -> "SBFunction":
        return SBFunction(self.field, self.terms + other.terms)

    def __neg__(self) -> "SBFunction":
        return SBFunction(self.field, tuple((b, -v) for b, v in self.terms))

    def __sub__(self, other: "SBFunction") -> "SBFunction":
        return self + (-other)

    def __mul__(self, c: Any) -> "SBFunction":
        c = Fraction(c)
        return SBFunction(self.field, tuple((b, v * c) for b, v in self.terms))

    def __rmul__(self, c: Any) -> "SBFunction":
        return self * c

    def shift(self, a: MidElement) -> "SBFunction":
        """w ↦ f(w + a)。"""
        terms = tuple((b.translated(-a), v) for b, v in self.terms)
        return SBFunction(self.field, terms)

    def scale(self, eps: MidElement) -> "SBFunction":
        """w ↦ f(εw)。"""
        e = mid_valuation(eps)
        if e is None:
            raise DivisionByZero("scaling by exact zero")
        out = []
        for ball, value in self.terms:
            radius = None if ball.radius is None else ball.radius - e
            cv = mid_valuation(ball.center)
            if cv is None:
                center = self.field.mid(0)
            else:
                need = (radius if radius is not None else cv + 32) - cv
                center = ball.center * eps.inv(need)
            out.append((Ball(center, radius), value))
        return SBFunction(self.field, tuple(out))

    def canonical(self) -> "SBFunction":
        """球の項を互いに素にし、同じ球の値をまとめる。"""
        points = [(b, v) for b, v in self.terms if b.radius is None]
        balls = [(b, v) for b, v in self.terms if b.radius is not None]
        changed = True
        while changed:
            changed = False
            for i, (bi, vi) in enumerate(balls):
                for j, (bj, vj) in enumerate(balls):
                    if i == j or not bi.contains_ball(bj):
                        continue
                    rest = [t for k, t in enumerate(balls) if k not in (i, j)]
                    if bi == bj:
                        balls = rest + [(bi, vi + vj)]
                    else:
                        balls = rest + [(bj, vj)] + [(c, vi) for c in bi.children()]
                    changed = True
                    break
                if changed:
                    break
        merged = [(b, v) for b, v in balls if v != 0]
        merged.sort(key=lambda t: (t[0].radius, str(t[0].center)))
        return SBFunction(self.field, tuple(merged + points))

    def support_floor(self) -> int | None:
        """台の元の付値の下界（零関数なら None）。"""
        if not self.terms:
            return None
        return min(ball_floor(b) for b, _ in self.terms)

    def finest_radius(self) -> int:
        radii = [b.radius for b, _ in self.terms if b.radius is not None]
        return max(radii, default=0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*Char[{b}]" for b, v in self.terms)


def haar_integral(f: SBFunction) -> Fraction:
    """∫_K f(u) du。"""
    return f.haar_integral()


@dataclass(frozen=True)
class SBFunction2:
    """K×K 上の Σ value·Char_{B1×B2}。"""

    field: FieldTowerSpec
    terms: tuple[tuple[Ball, Ball, Fraction], ...] = ()

    def __post_init__(self) -> None:
        cleaned = tuple(
            (b1, b2, Fraction(v)) for b1, b2, v in self.terms if Fraction(v) != 0
        )
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def rectangle(cls, b1: Ball, b2: Ball, value: int | Fraction = 1) -> "SBFunction2":
        return cls(b1.field, ((b1, b2, Fraction(value)),))

    @classmethod
    def from_terms(
        cls, field: FieldTowerSpec, terms: Iterable[tuple[Ball, Ball, Any]]
    ) -> "SBFunction2":
        return cls(field, tuple((b1, b2, Fraction(v)) for b1, b2, v in terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def haar_integral(self) -> Fraction:
        """∫∫ f(u, w) du dw。"""
        return sum(
            (v * b1.volume() * b2.volume() for b1, b2, v in self.terms), Fraction(0)
        )

    def evaluate(self, u: MidElement, w: MidElement) -> Fraction:
        return sum(
            (v for b1, b2, v in self.terms if b1.contains(u) and b2.contains(w)),
            Fraction(0),
        )

    def slice_at(self, u: MidElement) -> SBFunction:
        """w ↦ f(u, w)。"""
        return SBFunction(
            self.field, tuple((b2, v) for b1, b2, v in self.terms if b1.contains(u))
        )

    def slice_second(self, w: MidElement) -> SBFunction:
        """u ↦ f(u, w)。"""
        return SBFunction(
            self.field, tuple((b1, v) for b1, b2, v in self.terms if b2.contains(w))
        )

    def marginal_first(self) -> SBFunction:
        """u ↦ ∫ f(u, w) dw。"""
        terms = tuple((b1, v * b2.volume()) for b1, b2, v in self.terms)
        return SBFunction(self.field, terms)

    def marginal_second(self) -> SBFunction:
        """w ↦ ∫ f(u, w) du。"""
        terms = tuple((b2, v * b1.volume()) for b1, b2, v in self.terms)
        return SBFunction(self.field, terms)

    def __add__(self, other: "SBFunction2") -> "SBFunction2":
        return SBFunction2(self.field, self.terms + other.terms)

    def __mul__(self, c: Any) -> "SBFunction2":
        c = Fraction(c)
        terms = tuple((b1, b2, v * c) for b1, b2, v in self.terms)
        return SBFunction2(self.field, terms)

    def __rmul__(self, c: Any) -> "SBFunction2":
        return self * c

    def finest_radius(self) -> int:
        radii = [
            b.radius
            for b1, b2, _ in self.terms
            for b in (b1, b2)
            if b.radius is not None
        ]
        return max(radii, default=0)

    def support_floor(self) -> int | None:
        if not self.terms:
            return None
        return min(min(ball_floor(b1), ball_floor(b2)) for b1, b2, _ in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*Char[{b1} x {b2}]" for b1, b2, v in self.terms)
