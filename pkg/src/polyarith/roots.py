"""K 上の根の探索モジュール。

剰余体で根を総当たりし、単根はニュートン法で持ち上げ、重根の類は
x = r + π_K·x' と置き換えて再帰する。再帰の深さには予算がある。
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import sympy as sp

from src.config.settings import get_settings
from src.errors import InvalidInput, RootSearchBudgetExceeded
from src.logging.logger import get_logger
from src.polyarith.poly import Poly
from src.tower import Ball, FieldTowerSpec, Level, MidElement

logger = get_logger(__name__)

_X = sp.Symbol("X")


@dataclass(frozen=True)
class Root:
    """K の根（π_K^m を法として既知）と単根フラグ。"""

    value: MidElement
    simple: bool

    def __str__(self) -> str:
        return f"{self.value} ({'simple' if self.simple else 'repeated'})"


def is_purely_inseparable(psi: Poly) -> bool:
    """ψ が X^p の多項式（定数を含む）かどうか。標数 0 では常に False。"""
    if psi.is_zero:
        raise InvalidInput("is_purely_inseparable needs a nonzero polynomial")
    p = psi.field.char
    if p == 0:
        return False
    return all(k % p == 0 for k, _ in psi.coeffs)


def roots_over_K(
    psi: Poly, precision: int | None = None, budget: int | None = None
) -> list[Root]:
    """ψ の K における根をすべて求める。

    Args:
        psi: K[X] の非零多項式
        precision: 根を求める π_K 進精度 m（省略時は設定値）
        budget: 重根の類を細分する再帰の深さの上限（省略時は設定値）

    Returns:
        list[Root]: 根の一覧（表示文字列順）
    """
    if psi.level != Level.K:
        raise InvalidInput("roots_over_K expects a polynomial over K")
    if psi.is_zero:
        raise InvalidInput("roots_over_K needs a nonzero polynomial")
    settings = get_settings()
    m = precision if precision is not None else settings.mid_precision
    budget = budget if budget is not None else settings.root_search_budget
    if psi.is_constant:
        return []

    field = psi.field
    found: list[MidElement] = []
    rest = psi
    lowest = psi.coeffs[0][0]
    if lowest > 0:
        found.append(field.mid(0))
        rest = Poly(field, Level.K, {k - lowest: c for k, c in psi.coeffs})

    if _is_exact(rest) and rest.degree >= 1:
        if field.is_padic:
            rational, rest = _rational_roots(rest)
            found.extend(rational)
        elif all(e == 0 for _, c in rest.coeffs for e, _ in c.coeffs):
            # F_q 係数の多項式の K 上の根は F_q の根に限る
            found.extend(_constant_roots(rest))
            rest = Poly.constant(field, Level.K, 1)

    unresolved: list[Ball] = []
    if rest.degree >= 1:
        found.extend(_search(rest, m, budget, unresolved))
    roots = _finish(psi, found)
    if unresolved:
        logger.warning(
            f"root search budget exhausted for {psi}: "
            f"{len(unresolved)} classes unresolved"
        )
        raise RootSearchBudgetExceeded(partial=roots, unresolved=unresolved)
    logger.debug(f"roots_over_K({psi}) -> {[str(r) for r in roots]}")
    return roots


def _finish(psi: Poly, found: list[MidElement]) -> list[Root]:
    dpsi = psi.derivative()
    unique: dict[str, MidElement] = {}
    for r in found:
        unique.setdefault(str(r), r)
    return [
        Root(r, dpsi.evaluate(r).provably_nonzero())
        for _, r in sorted(unique.items())
    ]


def _is_exact(g: Poly) -> bool:
    return all(c.is_exact for _, c in g.coeffs)


# =============================================================================
# 厳密な根
# =============================================================================


def _fraction(r: sp.Rational) -> Fraction:
    return Fraction(int(r.p), int(r.q))


def _rational_roots(g: Poly) -> tuple[list[MidElement], Poly]:
    """有理根を sympy で求め、重複度ごと割り落とす。"""
    field = g.field
    expr = sum(
        sp.Rational(c.value.numerator, c.value.denominator) * _X**k for k, c in g.coeffs
    )
    poly = sp.Poly(expr, _X, domain=sp.QQ)
    roots = []
    for r, mult in poly.ground_roots().items():
        roots.append(field.mid(_fraction(r)))
        poly = poly.exquo(sp.Poly((_X - r) ** mult, _X, domain=sp.QQ))
    coeffs = poly.all_coeffs()
    degree = len(coeffs) - 1
    rest = Poly(
        field,
        Level.K,
        {
            degree - i: field.mid(_fraction(sp.Rational(c)))
            for i, c in enumerate(coeffs)
        },
    )
    return roots, rest


def _constant_roots(g: Poly) -> list[MidElement]:
    field = g.field
    return [
        field.digit(r)
        for r in field.residue.elements()
        if g.evaluate(field.digit(r)).is_exact_zero()
    ]


def _divide_linear(g: Poly, r: MidElement) -> Poly:
    """g を X - r で割った商（割り切れる前提）。"""
    terms = g.terms()
    zero = g.field.mid(0)
    quotient: dict[int, MidElement] = {}
    carry = zero
    for k in range(g.degree, 0, -1):
        carry = terms.get(k, zero) + r * carry
        quotient[k - 1] = carry
    return Poly(g.field, Level.K, quotient)


# =============================================================================
# 剰余体からの探索
# =============================================================================


def _residue_values(g: Poly) -> tuple[dict[int, int], dict[int, int]]:
    fq = g.field.residue
    coeffs = {k: c.residue() for k, c in g.coeffs}
    coeffs = {k: c for k, c in coeffs.items() if c}
    deriv = {k - 1: fq.mul(c, fq.from_int(k)) for k, c in coeffs.items() if k > 0}
    return coeffs, {k: c for k, c in deriv.items() if c}


def _fq_eval(field: FieldTowerSpec, coeffs: dict[int, int], r: int) -> int:
    fq = field.residue
    total = 0
    for k, c in coeffs.items():
        total = fq.add(total, fq.mul(c, fq.power(r, k)))
    return total


def _search(
    g: Poly, m: int, budget: int, unresolved: list[Ball]
) -> list[MidElement]:
    """定数項が非零の g の根を x = π^s y と置き換えて探す。"""
    d = g.degree
    lead = g.leading.valuation().n
    s = floor(
        min(
            Fraction(c.valuation().n - lead, d - k)
            for k, c in g.coeffs
            if k < d
        )
    )
    scaled = Poly(g.field, Level.K, {k: c.shift(s * k) for k, c in g.coeffs})
    base = scaled.min_valuation()
    assert base is not None
    primitive = scaled.shift_coefficients(-base)
    origin = g.field.mid(0)
    ys = _integral_roots(primitive, max(m - s, 1), budget, 0, origin, unresolved, s)
    return [y.shift(s) for y in ys]


def _integral_roots(
    g: Poly,
    prec: int,
    budget: int,
    depth: int,
    center: MidElement,
    unresolved: list[Ball],
    scale: int,
) -> list[MidElement]:
    """原始的な g の整な根を求める。center は元の y 座標での類の中心。"""
    field = g.field
    results: list[MidElement] = []
    coeffs, _ = _residue_values(g)
    for r in field.residue.elements():
        if _fq_eval(field, coeffs, r) != 0:
            continue
        r_lift = field.digit(r)
        h = g
        if _is_exact(g) and g.evaluate(r_lift).is_exact_zero():
            results.append(r_lift)
            while h.degree >= 1 and h.evaluate(r_lift).is_exact_zero():
                h = _divide_linear(h, r_lift)
            if h.is_constant:
                continue
            h_coeffs, _ = _residue_values(h)
            if _fq_eval(field, h_coeffs, r) != 0:
                continue
        _, h_deriv = _residue_values(h)
        if _fq_eval(field, h_deriv, r) != 0:
            results.append(_newton(h, r_lift, prec))
            continue
        class_center = center + r_lift * field.pi(depth)
        if depth >= budget:
            unresolved.append(
                Ball((class_center).shift(scale), depth + 1 + scale)
            )
            continue
        sub = h.compose_linear(r_lift, 1)
        base = sub.min_valuation()
        if base is None:
            continue
        sub = sub.shift_coefficients(-base)
        for z in _integral_roots(
            sub, max(prec - 1, 1), budget, depth + 1, class_center, unresolved, scale
        ):
            results.append(r_lift + z.shift(1))
    return results


def _newton(g: Poly, start: MidElement, prec: int) -> MidElement:
    """単根の剰余類からニュートン法で π_K^prec まで持ち上げる。"""
    precisions = [c.precision for _, c in g.coeffs if c.precision is not None]
    target = min([prec, *precisions])
    dg = g.derivative()
    y = start
    for _ in range(2 * max(target, 1).bit_length() + 4):
        value = g.evaluate(y)
        if value.valuation().at_least(target):
            break
        step = value * dg.evaluate(y).inv(target)
        nxt = y - step
        if nxt.precision is None or nxt.precision >= target:
            nxt = nxt.reduced(target)
        if nxt == y:
            break
        y = nxt
    return y.truncate(target)
