"""関数 J の積分モジュール。

J(v) = Σ_{q̄(ω) = v, q̄'(ω) ≠ 0} |q̄'(ω)|^{-1}·∫f(ω, s) ds の K 上の積分を、
第一座標の球分割で求める。q̄ が全単射になる球では像の球の中心 v で
q̄(ω) = v を解いて J(v) を評価する。臨界点を含む球は
同心の環の質量が公比 1/q_K の等比列であることを確かめて和をとる。
"""

from fractions import Fraction

from src.config.settings import get_settings
from src.decompose import taylor_at
from src.errors import PurelyInseparable, UnsupportedFiberStructure
from src.logging.logger import get_logger
from src.measure import SBFunction2, abs_mid, mid_valuation
from src.polyarith import Poly, is_purely_inseparable, roots_over_K
from src.tower import Ball, Level, MidElement

logger = get_logger(__name__)


def in_fiber_class(qbar: Poly) -> bool:
    """単項式、3 次以下、または q̄' が零点を持たないか。"""
    if len(qbar.coeffs) == 1 or qbar.degree <= 3:
        return True
    dq = qbar.derivative()
    return dq.is_constant or not roots_over_K(dq)


def check_fiber_class(qbar: Poly) -> None:
    """扱えるファイバー構造でなければ例外を送出する。"""
    if qbar.level != Level.K or qbar.is_constant:
        raise UnsupportedFiberStructure(
            f"{qbar} is not a nonconstant polynomial over K"
        )
    if is_purely_inseparable(qbar):
        raise PurelyInseparable(f"derivative of {qbar} vanishes identically")
    if not in_fiber_class(qbar):
        raise UnsupportedFiberStructure(
            f"{qbar} is outside the supported fiber class "
            "(monomial, degree <= 3, or nowhere vanishing derivative)"
        )


class _BallIntegrator:
    """∫_D Σ|q̄'|^{-1} を球ごとに求める。"""

    def __init__(self, qbar: Poly, critical: list[MidElement], budget: int) -> None:
        self.qbar = qbar
        self.dq = qbar.derivative()
        self.critical = critical
        self.budget = budget
        self.visited = 0
        self.q = qbar.field.q

    def _tick(self) -> None:
        self.visited += 1
        if self.visited > self.budget:
            raise UnsupportedFiberStructure(
                f"ball partition for {self.qbar} exceeded budget {self.budget}"
            )

    def _fiber_weight(self, ball: Ball, v: MidElement) -> Fraction:
        """ball 内の q̄(ω) = v の単根についての Σ|q̄'(ω)|^{-1}。"""
        fiber = self.qbar - Poly.constant(self.qbar.field, Level.K, v)
        weight = Fraction(0)
        for root in roots_over_K(fiber):
            if root.simple and ball.contains(root.value):
                weight += 1 / abs_mid(self.dq.evaluate(root.value))
        return weight

    def _linear(self, ball: Ball) -> Fraction | None:
        """一次の項が支配的なら像の球の上で J は定数で、vol(像)·J(像の中心)。"""
        b = taylor_at(self.qbar, ball)
        v1 = mid_valuation(b[1])
        if v1 is None:
            return None
        if any(v is not None and v <= v1 for v in map(mid_valuation, b[2:])):
            return None
        image = Fraction(self.q) ** (-v1)
        return image * self._fiber_weight(ball, b[0])

    def _annulus(self, ball: Ball, sigma: MidElement) -> tuple[Fraction, Ball]:
        mass = Fraction(0)
        inner = ball
        for child in ball.children():
            if child.contains(sigma):
                inner = child
            else:
                mass += self.mass(child)
        return mass, inner

    def _tail(self, ball: Ball, sigma: MidElement) -> Fraction:
        total = Fraction(0)
        mass, inner = self._annulus(ball, sigma)
        while True:
            self._tick()
            next_mass, deeper = self._annulus(inner, sigma)
            if next_mass * self.q == mass:
                return total + mass * self.q / (self.q - 1)
            total += mass
            mass, inner = next_mass, deeper

    def mass(self, ball: Ball) -> Fraction:
        total = Fraction(0)
        stack = [ball]
        while stack:
            current = stack.pop()
            self._tick()
            inside = [s for s in self.critical if current.contains(s)]
            if len(inside) == 1:
                total += self._tail(current, inside[0])
                continue
            if not inside:
                contribution = self._linear(current)
                if contribution is not None:
                    total += contribution
                    continue
            stack.extend(current.children())
        return total


def j_integral(qbar: Poly, f: SBFunction2, budget: int | None = None) -> Fraction:
    """∫_K J(v) dv を求める。

    Args:
        qbar: K[X] の多項式（q̄' ≠ 0、扱えるファイバー構造）
        f: K×K 上の階段関数
        budget: 訪問する球の数の上限（省略時は設定値）

    Returns:
        Fraction: 積分値（∫∫f に等しい）
    """
    check_fiber_class(qbar)
    if budget is None:
        budget = get_settings().ball_split_budget
    dq = qbar.derivative()
    critical = [] if dq.is_constant else [r.value for r in roots_over_K(dq)]
    integrator = _BallIntegrator(qbar, critical, budget)
    total = Fraction(0)
    for b1, b2, value in f.terms:
        if b1.radius is None or b2.radius is None:
            continue
        total += value * b2.volume() * integrator.mass(b1)
    logger.info(
        f"j_integral: qbar={qbar} -> {total} ({integrator.visited} balls visited)"
    )
    return total
