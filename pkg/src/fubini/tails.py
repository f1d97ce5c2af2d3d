"""殻ごとの質量と発散の証明モジュール。

凍結した成分の K 上の関数は、核の台より外の殻 S_j = {ν(v) = j} で
質量 (∫k)·μ(Q̄^{-1}(S_j)) を持つ。最高次の項が支配的な範囲では
μ(Q̄^{-1}(S_{j-d})) = q_K·μ(Q̄^{-1}(S_j)) なので、周期 d ごとの質量は
公比 q_K の等比列になり、0 でなければ積分は発散する。
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from src.config.settings import get_settings
from src.decompose import preimage_measure
from src.fubini.sections import SectionComponent
from src.logging.logger import get_logger
from src.measure import mid_valuation
from src.polyarith import Poly
from src.tower import Ball, TwoElement

logger = get_logger(__name__)

# 窓をずらして等比性を確かめ直す回数
_MAX_SHIFTS = 4


@dataclass(frozen=True)
class GradedTerm:
    """殻ごとの厳密な質量と外向きの等比的な裾。

    shells は外向き（付値の降順）の (j, 質量) で、質量は X^exponent の係数。
    最後の殻より外では、周期 period ごとに質量が ratio 倍になる。
    """

    center: TwoElement
    level: int
    exponent: int
    period: int
    shells: tuple[tuple[int, Fraction], ...]
    ratio: Fraction

    @property
    def k_hi(self) -> int:
        return self.shells[0][0]

    @property
    def k_lo(self) -> int:
        return self.shells[-1][0]

    @property
    def divergent(self) -> bool:
        return abs(self.ratio) >= 1 and any(m != 0 for _, m in self.shells)

    def mass(self, j: int) -> Fraction:
        """殻 S_j の質量（窓より外は裾の公比で延長）。"""
        masses = dict(self.shells)
        if j in masses:
            return masses[j]
        if j > self.k_hi:
            raise ValueError(f"shell {j} lies inside the certified window")
        periods = -((j - self.k_lo) // self.period) if j < self.k_lo else 0
        return masses[j + periods * self.period] * self.ratio**periods

    def period_masses(self) -> list[Fraction]:
        """窓内の周期ごとの質量の和。"""
        values = [m for _, m in self.shells]
        return [
            sum(values[i : i + self.period], Fraction(0))
            for i in range(0, len(values), self.period)
        ]

    def __str__(self) -> str:
        window = ", ".join(f"{j}: {m}" for j, m in self.shells)
        return (
            f"shells[{self.center}, {self.level}]*X^{self.exponent} "
            f"{{{window}}} ratio {self.ratio} per {self.period}"
        )


def shell_measure(Qbar: Poly, j: int) -> Fraction:
    """μ{ω : ν(Q̄(ω)) = j}。"""
    zero = Qbar.field.mid(0)
    return preimage_measure(Qbar, Ball(zero, j)) - preimage_measure(
        Qbar, Ball(zero, j + 1)
    )


def dominance_threshold(Qbar: Poly) -> int | None:
    """これ以下の殻では Q̄ の値の付値が最高次の項で決まる j（単項式なら None）。"""
    d = Qbar.degree
    lead = mid_valuation(Qbar.leading)
    assert lead is not None
    bounds = [
        Fraction(mid_valuation(c) - lead, d - k) for k, c in Qbar.coeffs if k < d
    ]
    if not bounds:
        return None
    tau = floor(min(bounds)) - 1
    return lead + d * tau


def _window_start(component: SectionComponent) -> int:
    start = -1
    floor_ = component.kernel.support_floor() if component.kernel is not None else None
    if floor_ is not None:
        start = min(start, floor_ - 1)
    threshold = dominance_threshold(component.poly)
    if threshold is not None:
        start = min(start, threshold)
    return start


def _certify_class(
    components: list[SectionComponent], degree: int, window: int
) -> tuple[GradedTerm | None, str | None]:
    """同じ次数の成分の和の裾を確かめる。"""
    head = components[0]
    q = head.poly.field.q
    start = min(_window_start(c) for c in components)
    for _ in range(_MAX_SHIFTS):
        shells = []
        for j in range(start, start - window * degree, -1):
            mass = sum(
                (c.kernel_mass * shell_measure(c.poly, j) for c in components),
                Fraction(0),
            )
            shells.append((j, mass))
        term = GradedTerm(
            head.center,
            head.level,
            head.integral_exponent,
            degree,
            tuple(shells),
            Fraction(q),
        )
        periods = term.period_masses()
        if all(m == 0 for m in periods):
            return None, None
        if all(b == a * q for a, b in zip(periods, periods[1:], strict=False)):
            return term, None
        start -= degree
    return None, (
        f"no geometric tail for degree-{degree} part at "
        f"[{head.center}, {head.level}] within {_MAX_SHIFTS} windows"
    )


def certify_divergence(
    components: list[SectionComponent], window: int | None = None
) -> tuple[list[GradedTerm], list[str]]:
    """凍結した成分を K 上の関数ごとにまとめ、裾の質量を証明する。

    Args:
        components: ∫k ≠ 0 の凍結した成分
        window: 確かめる周期の数（省略時は設定値）

    Returns:
        tuple: (証明できた GradedTerm の一覧, 診断メッセージ)
    """
    if window is None:
        window = get_settings().tail_window
    window = max(window, 2)
    groups: dict[tuple[tuple[str, int, int], int], list[SectionComponent]] = (
        defaultdict(list)
    )
    for component in components:
        groups[(component.group_key(), component.poly.degree)].append(component)

    terms: list[GradedTerm] = []
    diagnostics: list[str] = []
    for (key, degree), members in sorted(groups.items()):
        term, problem = _certify_class(members, degree, window)
        if term is not None:
            terms.append(term)
            logger.debug(f"certified tail {term}")
        if problem is not None:
            diagnostics.append(problem)
            logger.warning(problem)
    return terms, diagnostics
