"""反復積分の数値的な照合モジュール。

Φ(x, y) = f^0(x, y - t^R q(x)) の二つの反復積分を K の桁の格子上の
リーマン和で求め、X = x0 に特殊化したエンジンの値と比べる。
各セルでは π_K 進の深い桁と t 進の桁を揺らした標本をとり、値が揃わない
セルや臨界値を含むセルは細分する。細分の限界に達したセルは未解決とし、
セルの測度と標本の最大値から誤差の上界を見積もる。
f は項を直接読み、Φ は多項式の代入で評価する。
"""

import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from src.config.settings import get_settings
from src.errors import FubiniError, InvalidInput
from src.logging.logger import get_logger
from src.measure import RatFunc, SBFunction2
from src.oracle.grid import GridSpec
from src.oracle.report import OracleReport, OracleStatus, Witness
from src.polyarith import Poly, roots_over_K
from src.tower import AtLeast, Ball, Level, MidElement, TwoElement, mid_digits

logger = get_logger(__name__)

# 揺らぎが揃わないセルを細分する段数
_REFINE_LEVELS = 2

CellFn = Callable[[MidElement], tuple[Fraction, Fraction]]


class _Undecided(Exception):
    """臨界点の上の x 切片が定数でない。"""


@dataclass
class _Sum:
    """リーマン和と誤差の上界。"""

    value: Fraction = Fraction(0)
    bound: Fraction = Fraction(0)
    unresolved: int = 0
    undecided: int = 0
    cells: int = 0

    def add(self, other: "_Sum", weight: Fraction = Fraction(1)) -> None:
        self.value += weight * other.value
        self.bound += abs(weight) * other.bound
        self.unresolved += other.unresolved
        self.undecided += other.undecided
        self.cells += other.cells


def _valuation(x: MidElement) -> int | None:
    v = x.valuation()
    return None if isinstance(v, AtLeast) else v.n


def _ball_floor(ball: Ball) -> int:
    v = _valuation(ball.center)
    if ball.radius is None:
        return 0 if v is None else v
    return ball.radius if v is None else min(v, ball.radius)


def _poly_floor(poly: Poly, m: int) -> int | None:
    """π_K^m·O_K 上での poly の値の付値の下界。"""
    bounds = [v + k * m for k, c in poly.coeffs if (v := _valuation(c)) is not None]
    return min(bounds) if bounds else None


class _RepeatedOracle:
    def __init__(
        self,
        f: SBFunction2,
        R: int,
        q: Poly,
        grid: GridSpec,
        x0: Fraction,
        samples: int,
        rng: random.Random,
    ) -> None:
        self.f = f
        self.R = R
        self.q = q
        self.qbar = q.reduce()
        self.grid = grid
        self.x0 = x0
        self.samples = samples
        self.rng = rng
        self.field = q.field
        self.t_R = self.field.t(R)
        offset = get_settings().grid_u_offset
        self.offset = offset
        balls = [(b1, b2) for b1, b2, _ in f.terms]
        self.floor1 = min((_ball_floor(b1) for b1, _ in balls), default=0)
        self.floor2 = min((_ball_floor(b2) for _, b2 in balls), default=0)
        self.tail = mid_digits(self.field, grid.u_depth)
        self._last: tuple[TwoElement, TwoElement] | None = None

    # =========================================================================
    # Φ の評価
    # =========================================================================

    def _in_first(self, u: MidElement) -> bool:
        return any(b1.contains(u) for b1, _, _ in self.f.terms)

    def _f_value(self, u: MidElement, w: MidElement) -> Fraction:
        return sum(
            (v for b1, b2, v in self.f.terms if b1.contains(u) and b2.contains(w)),
            Fraction(0),
        )

    def phi(self, x: TwoElement, y: TwoElement) -> Fraction:
        """Φ(x, y)。"""
        if x.valuation().below(0):
            return Fraction(0)
        u = x.residue()
        if not self._in_first(u):
            return Fraction(0)
        if self._last is None or self._last[0] is not x:
            self._last = (x, self.q.evaluate(x) * self.t_R)
        z = y - self._last[1]
        v = z.valuation()
        if v.below(0):
            return Fraction(0)
        return self._f_value(u, z.residue())

    def jitter(self, start: int) -> TwoElement:
        """t^start 以降の t_depth - 1 桁をランダムにとる。"""
        width = self.grid.t_depth - 1
        digits = {start + i: self.rng.choice(self.tail) for i in range(width)}
        return TwoElement(self.field, digits)

    # =========================================================================
    # セルの和
    # =========================================================================

    def _cells(self, offset: int, radius: int | None = None) -> list[Ball]:
        r = self.grid.u_depth if radius is None else radius
        centers = mid_digits(self.field, r, offset)
        self.grid.ensure(len(centers))
        return [Ball(c, r) for c in centers]

    def _probes(self, ball: Ball, deep: bool) -> list[MidElement]:
        field = self.field
        r = ball.radius
        assert r is not None
        points = [ball.center]
        for _ in range(self.samples):
            d = self.rng.randrange(1, field.q)
            points.append(ball.center + field.pi(r) * field.digit(d))
        if deep:
            for depth in range(r, r + _REFINE_LEVELS + 1):
                step = field.pi(depth)
                points += [
                    ball.center + step * field.digit(d) for d in range(1, field.q)
                ]
        return points

    def cell(
        self,
        ball: Ball,
        fn: CellFn,
        flagged: Callable[[Ball], bool] = lambda _: False,
        refine: int = _REFINE_LEVELS,
    ) -> _Sum:
        """∫_ball fn をセルの値と測度の積で近似する。"""
        is_flagged = flagged(ball)
        if is_flagged and refine > 0:
            return self._refine(ball, fn, flagged, refine)
        vol = ball.volume()
        try:
            values = [fn(p) for p in self._probes(ball, is_flagged)]
        except (FubiniError, _Undecided) as e:
            if refine > 0:
                return self._refine(ball, fn, flagged, refine)
            logger.debug(f"undecided cell {ball}: {e}")
            return _Sum(undecided=1, cells=1)
        first, _ = values[0]
        inner_bound = max(b for _, b in values)
        if not is_flagged and all(v == first for v, _ in values):
            return _Sum(vol * first, vol * inner_bound, cells=1)
        if refine > 0:
            return self._refine(ball, fn, flagged, refine)
        spread = max(abs(v) for v, _ in values)
        bound = vol * (2 * spread + inner_bound)
        return _Sum(vol * first, bound, unresolved=1, cells=1)

    def _refine(
        self, ball: Ball, fn: CellFn, flagged: Callable[[Ball], bool], refine: int
    ) -> _Sum:
        total = _Sum()
        for child in ball.children():
            total.add(self.cell(child, fn, flagged, refine - 1))
        return total

    def over(
        self,
        balls: list[Ball],
        fn: CellFn,
        flagged: Callable[[Ball], bool] = lambda _: False,
    ) -> _Sum:
        total = _Sum()
        for ball in balls:
            total.add(self.cell(ball, fn, flagged))
        return total

    # =========================================================================
    # dy dx
    # =========================================================================

    def _inner_dy(self, x: TwoElement) -> tuple[Fraction, Fraction]:
        """∫Φ(x, y) dy。y は t^R q(x) の負の桁と t^0 の桁を中心にとる。"""
        if not self._in_first(x.residue()):
            return Fraction(0), Fraction(0)
        center = (self.q.evaluate(x) * self.t_R).reduced(1)
        balls = self._cells(max(self.offset, -self.floor2))
        field = self.field
        s = self.over(
            balls,
            lambda w: (
                self.phi(x, center + field.two(w) + self.jitter(1)),
                Fraction(0),
            ),
        )
        return s.value, s.bound

    def dydx(self) -> _Sum:
        balls = self._cells(max(self.offset, -self.floor1))
        return self.over(
            balls, lambda u: self._inner_dy(self.field.two(u) + self.jitter(1))
        )

    # =========================================================================
    # dx dy
    # =========================================================================

    def _inner_dx_step(self, y: TwoElement) -> tuple[Fraction, Fraction]:
        balls = self._cells(max(self.offset, -self.floor1))
        s = self.over(
            balls,
            lambda u: (self.phi(self.field.two(u) + self.jitter(1), y), Fraction(0)),
        )
        return s.value, s.bound

    def _critical_constant(self, omega: MidElement, y: TwoElement) -> None:
        """ω̌ + t·O_F 上で Φ(·, y) が定数か確かめる（定数なら測度零）。"""
        field = self.field
        probes = [field.mid(0)] + [
            field.pi(k) * field.digit(d)
            for k in range(-1, 2)
            for d in range(1, field.q)
        ]
        values = {
            self.phi(field.two(omega) + field.two(u).shift(1) + self.jitter(2), y)
            for u in probes
        }
        if len(values) > 1:
            raise _Undecided(f"x-section over critical root {omega} is not constant")

    def _inner_dx_fibres(
        self, y: TwoElement, v: MidElement
    ) -> tuple[Fraction, Fraction]:
        """R = -1 の ∫Φ(x, y) dx。x は q̄(ω) = v の根 ω の上の t^1 の桁を動く。"""
        field = self.field
        psi = self.qbar - Poly.constant(field, Level.K, v)
        dq = self.qbar.derivative()
        total = _Sum()
        for root in roots_over_K(psi):
            omega = root.value
            if not self._in_first(omega):
                continue
            if not root.simple:
                self._critical_constant(omega, y)
                continue
            k = _valuation(dq.evaluate(omega))
            assert k is not None
            z0 = (y - self.q.evaluate(field.two(omega)) * self.t_R).residue()
            vz = _valuation(z0)
            reach = self.floor2 if vz is None else min(self.floor2, vz)
            radius = self.grid.u_depth - k
            offset = max(self.offset, k - reach, -radius + 1)
            balls = self._cells(offset, radius)
            s = self.over(
                balls,
                lambda u, omega=omega: (
                    self.phi(
                        field.two(omega) + field.two(u).shift(1) + self.jitter(2), y
                    ),
                    Fraction(0),
                ),
            )
            total.add(s, self.x0)
        return total.value, total.bound

    def _critical_values(self) -> list[MidElement]:
        dq = self.qbar.derivative()
        if dq.is_zero or dq.is_constant:
            return []
        return [self.qbar.evaluate(r.value) for r in roots_over_K(dq)]

    def dxdy(self) -> _Sum:
        field = self.field
        if self.R >= 0:
            hbar = self.qbar if self.R == 0 else Poly.zero(field, Level.K)
            reach = _poly_floor(hbar, self.floor1)
            floor_w = self.floor2 if reach is None else min(self.floor2, reach)
            balls = self._cells(max(self.offset, -floor_w))
            return self.over(
                balls, lambda w: self._inner_dx_step(field.two(w) + self.jitter(1))
            )

        reach = _poly_floor(self.qbar, self.floor1)
        balls = self._cells(max(self.offset, -(reach if reach is not None else 0)))
        critical = self._critical_values()
        w_digits = mid_digits(field, self.grid.u_depth, max(self.offset, -self.floor2))

        def flagged(ball: Ball) -> bool:
            try:
                return any(ball.contains(c) for c in critical)
            except FubiniError:
                return True

        def outer(v: MidElement) -> tuple[Fraction, Fraction]:
            w = field.two(self.rng.choice(w_digits))
            y = field.two(v).shift(-1) + w + self.jitter(1)
            value, bound = self._inner_dx_fibres(y, v)
            return value / self.x0, bound / self.x0

        return self.over(balls, outer, flagged)


def verify_repeated(
    f: SBFunction2,
    R: int,
    q: Poly,
    grid: GridSpec,
    dydx: RatFunc,
    dxdy: RatFunc | None,
    x0: Fraction | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> OracleReport:
    """二つの反復積分のリーマン和をエンジンの値と比べる。

    Args:
        f: K×K 上の階段関数
        R: 深さ（R < -1 では dy dx の和だけをとる）
        q: 正規化多項式
        grid: 格子（t_depth は揺らす t 進の桁、u_depth はセルの半径）
        dydx: エンジンの ∫∫Φ dy dx
        dxdy: エンジンの ∫∫Φ dx dy（HOLDS または COUNTEREXAMPLE のとき）
        x0: X の特殊化点（省略時は設定値、未設定なら 1/q_K）
        samples: セルごとの揺らぎの標本数（省略時は設定値）
        seed: 乱数の種（省略時は設定値）

    Returns:
        OracleReport: 和・上界・エンジンの値と判定
    """
    settings = get_settings()
    if x0 is None:
        x0 = settings.x0 if settings.x0 is not None else Fraction(1, q.field.q)
    if not 0 < x0 < 1:
        raise InvalidInput(f"x0 must lie strictly between 0 and 1, got {x0}")
    samples = settings.oracle_samples if samples is None else samples
    rng = random.Random(settings.seed if seed is None else seed)
    oracle = _RepeatedOracle(f, R, q, grid, Fraction(x0), samples, rng)

    sums = {"dydx": (oracle.dydx(), dydx)}
    if dxdy is not None and R >= -1:
        sums["dxdy"] = (oracle.dxdy(), dxdy)

    values = {"x0": str(x0), "grid": str(grid)}
    witnesses = []
    undecided = 0
    cells = 0
    for name, (s, engine) in sums.items():
        expected = engine.evaluate(x0)
        values[f"{name}_sum"] = str(s.value)
        values[f"{name}_bound"] = str(s.bound)
        values[f"{name}_engine"] = str(expected)
        undecided += s.undecided
        cells += s.cells
        if abs(s.value - expected) > s.bound:
            witnesses.append(
                Witness(
                    name,
                    f"x0={x0}",
                    f"sum {s.value} vs engine {expected} (bound {s.bound})",
                )
            )

    notes: tuple[str, ...] = ()
    if R < -1:
        notes += (f"dx dy is not summed at depth {R}",)
    if undecided:
        notes += (f"{undecided} cells could not be evaluated",)
    if not witnesses:
        status = OracleStatus.PASS
    elif undecided:
        status = OracleStatus.INCONCLUSIVE
    else:
        status = OracleStatus.FAIL
    logger.info(
        f"verify_repeated(R={R}, q={q}, grid={grid}) -> {status.value} {values}"
    )
    return OracleReport(
        "verify-repeated", status, cells, tuple(witnesses), values, notes
    )
