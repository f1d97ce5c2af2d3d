"""K 上の多項式による球の逆像の測度モジュール。

μ{x ∈ D : ψ(x) ∈ B} を球の分割で厳密に求める。各球 c + π^k O_K で
ψ(c + π^k X) = Σ b_j X^j と展開し、像が目標に含まれるか、
目標と交わらないか、一次の項が支配的（全単射）かを判定する。
"""

from fractions import Fraction
from math import floor

from src.config.settings import get_settings
from src.errors import InsufficientPrecision, InvalidInput, UnsupportedFiberStructure
from src.logging.logger import get_logger
from src.polyarith import Poly
from src.tower import Ball, Level, MidElement
from src.tower.valuation import AtLeast

logger = get_logger(__name__)


def _valuation_or_none(x: MidElement) -> int | None:
    """付値。厳密な零は None、決定できなければ例外。"""
    v = x.valuation()
    if isinstance(v, AtLeast):
        if v.is_exact_zero:
            return None
        raise InsufficientPrecision(message=f"valuation of {x} is undecidable")
    return v.n


def bounding_radius(psi: Poly, target: Ball) -> int:
    """ψ(x) ∈ target となる x がすべて入る π^k O_K の k。"""
    d = psi.degree
    lead = psi.leading.valuation().n
    c_val = _valuation_or_none(target.center)
    level = target.radius if c_val is None else min(target.radius, c_val)
    candidates = [Fraction(level - lead, d)]
    for k, c in psi.coeffs:
        if k < d:
            candidates.append(Fraction(c.valuation().n - lead, d - k))
    return floor(min(candidates))


def taylor_at(psi: Poly, ball: Ball) -> list[MidElement]:
    """ψ(c + π^r X) の係数 b_0..b_d。"""
    composed = psi.compose_linear(ball.center, ball.radius)
    return [composed.coefficient(j) for j in range(psi.degree + 1)]


def preimage_measure(
    psi: Poly,
    target: Ball,
    domain: Ball | None = None,
    budget: int | None = None,
) -> Fraction:
    """μ{x ∈ domain : ψ(x) ∈ target} を返す。

    Args:
        psi: K[X] の多項式
        target: 目標の球（一点なら測度は 0）
        domain: 定義域の球（None なら K 全体）
        budget: 訪問する球の数の上限（省略時は設定値）

    Returns:
        Fraction: 逆像のハール測度
    """
    if psi.level != Level.K:
        raise InvalidInput("preimage_measure expects a polynomial over K")
    if psi.is_constant:
        if domain is None:
            raise InvalidInput("constant map on all of K has infinite preimage")
        return domain.volume() if target.contains(psi.coefficient(0)) else Fraction(0)
    if target.radius is None:
        return Fraction(0)
    if domain is None:
        domain = Ball(psi.field.mid(0), bounding_radius(psi, target))
    elif domain.radius is None:
        return Fraction(0)
    if budget is None:
        budget = get_settings().ball_split_budget

    s = target.radius
    total = Fraction(0)
    stack = [domain]
    visited = 0
    while stack:
        ball = stack.pop()
        visited += 1
        if visited > budget:
            raise UnsupportedFiberStructure(
                f"ball splitting for {psi} exceeded budget {budget}"
            )
        b = taylor_at(psi, ball)
        v0 = _valuation_or_none(b[0] - target.center)
        higher = [_valuation_or_none(c) for c in b[1:]]
        finite = [v for v in higher if v is not None]
        v_min = min(finite)
        if (v0 is None or v0 >= s) and v_min >= s:
            total += ball.volume()
            continue
        if v0 is not None and v0 < s and v0 < v_min:
            continue
        v1 = higher[0]
        if v1 is not None and all(v is None or v > v1 for v in higher[1:]):
            # 一次の項が支配的なら像は球 b_0 + π^{v1} O_K で測度は |b_1| 倍
            if v0 is None or v0 >= min(v1, s):
                total += ball.volume() * Fraction(psi.field.q) ** (v1 - max(v1, s))
            continue
        stack.extend(ball.children())
    logger.debug(f"preimage_measure({psi}, {target}) = {total} ({visited} balls)")
    return total
