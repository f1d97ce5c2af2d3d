"""切断面関数モジュール。

y ↦ ∫^F Φ(x, y) dx（Φ(x, y) = f^0(x, y - t^R q(x))）を、
持ち上げの形をした成分の和として表す。各成分は中心 c と水準 n を持ち、
y ∈ c + t^n·O_F で K 上の関数の (y - c)t^{-n} の剰余での値に X^factor を掛ける。

- STEP: R ≥ 0 のとき v ↦ ∫f(u, v - h̄(u)) du
- NONSINGULAR: v ↦ Σ_{単根 ω} |q̄'(ω)|^{-1}·∫f(ω, s) ds
- FIBRE / LEVEL: 特異な剰余根 σ で凍結した核 k = f(σ, ·) を
  σ での正規化多項式 Q̄ で押し出したもの
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from src.decompose import decompose_preimage, preimage_measure
from src.errors import InvalidInput, InsufficientPrecision, UnsupportedFiberStructure
from src.fubini.appendix import check_fiber_class
from src.logging.logger import get_logger
from src.measure import RatFunc, SBFunction, SBFunction2, abs_mid
from src.polyarith import Poly, is_purely_inseparable, roots_over_K, taylor_normalize
from src.tower import FieldTowerSpec, Level, MidElement, TwoElement

logger = get_logger(__name__)


class ComponentKind(str, Enum):
    """切断面の成分の種類。"""

    STEP = "step"
    NONSINGULAR = "nonsingular"
    FIBRE = "fibre"
    LEVEL = "level"


def _fibre_sum(poly: Poly, v: MidElement, weight) -> Fraction:
    """Σ_{poly(ω) = v, 単根} weight(ω)·|poly'(ω)|^{-1}。"""
    field = poly.field
    shifted = poly - Poly.constant(field, Level.K, v)
    dpoly = poly.derivative()
    total = Fraction(0)
    for root in roots_over_K(shifted):
        if not root.simple:
            continue
        w = weight(root.value)
        if w:
            total += w / abs_mid(dpoly.evaluate(root.value))
    return total


def _pushforward(poly: Poly, v: MidElement, kernel: SBFunction) -> Fraction:
    """∫_K k(v - poly(u)) du。"""
    psi = Poly.constant(poly.field, Level.K, v) - poly
    return sum(
        (value * preimage_measure(psi, ball) for ball, value in kernel.terms),
        Fraction(0),
    )


@dataclass(frozen=True)
class SectionComponent:
    """切断面の一成分。

    Attributes:
        kind: 成分の種類
        center: 持ち上げの中心
        level: 持ち上げの水準 n
        factor: 値に掛かる X の指数
        poly: K[X] の多項式（STEP では h̄、それ以外では q̄ または Q̄）
        f: STEP・NONSINGULAR の階段関数
        kernel: FIBRE・LEVEL の凍結した核
    """

    kind: ComponentKind
    center: TwoElement
    level: int
    factor: int
    poly: Poly
    f: SBFunction2 | None = None
    kernel: SBFunction | None = None

    @property
    def frozen(self) -> bool:
        return self.kind in (ComponentKind.FIBRE, ComponentKind.LEVEL)

    @property
    def kernel_mass(self) -> Fraction:
        """∫k（凍結した成分のみ）。"""
        if self.kernel is None:
            raise InvalidInput(f"{self.kind.value} component has no frozen kernel")
        return self.kernel.haar_integral()

    @property
    def integral_exponent(self) -> int:
        """この成分の積分に現れる X の指数。"""
        return self.factor + self.level

    def residue_value(self, v: MidElement) -> Fraction:
        """K 上の関数の v での値。"""
        match self.kind:
            case ComponentKind.STEP:
                assert self.f is not None
                psi = Poly.constant(self.poly.field, Level.K, v) - self.poly
                return sum(
                    (
                        value * preimage_measure(psi, b2, domain=b1)
                        for b1, b2, value in self.f.terms
                    ),
                    Fraction(0),
                )
            case ComponentKind.NONSINGULAR:
                assert self.f is not None
                return _fibre_sum(self.poly, v, self.f.marginal_first().evaluate)
            case ComponentKind.FIBRE:
                mass = self.kernel_mass
                if mass == 0:
                    return Fraction(0)
                return mass * _fibre_sum(self.poly, v, lambda _: 1)
            case ComponentKind.LEVEL:
                assert self.kernel is not None
                return _pushforward(self.poly, v, self.kernel)
        raise InvalidInput(f"unknown component kind {self.kind}")

    def evaluate(self, y: TwoElement) -> RatFunc:
        diff = y - self.center
        v = diff.valuation()
        if v.below(self.level):
            return RatFunc.zero()
        if not v.at_least(self.level):
            raise InsufficientPrecision(required=self.level)
        residue = diff.shift(-self.level).residue()
        return RatFunc.monomial(self.residue_value(residue), self.factor)

    def group_key(self) -> tuple[str, int, int]:
        """同じ K 上の関数としてまとめられる成分の鍵。"""
        return (
            self.center.reduced(self.level).digit_key(),
            self.level,
            self.integral_exponent,
        )

    def __str__(self) -> str:
        body = self.kernel if self.kernel is not None else self.f
        return (
            f"{self.kind.value}[{self.center}, {self.level}]"
            f"(poly={self.poly}, {body})*X^{self.factor}"
        )


@dataclass(frozen=True)
class SectionFunction:
    """成分の和としての y ↦ ∫Φ(x, y) dx。"""

    field: FieldTowerSpec
    R: int
    components: tuple[SectionComponent, ...] = ()

    def evaluate(self, y: TwoElement) -> RatFunc:
        total = RatFunc.zero()
        for component in self.components:
            total = total + component.evaluate(y)
        return total

    @property
    def frozen_components(self) -> tuple[SectionComponent, ...]:
        return tuple(c for c in self.components if c.frozen)

    def __add__(self, other: "SectionFunction") -> "SectionFunction":
        return SectionFunction(self.field, self.R, self.components + other.components)

    def __len__(self) -> int:
        return len(self.components)

    def __str__(self) -> str:
        if not self.components:
            return "0"
        return " + ".join(str(c) for c in self.components)


# =============================================================================
# 構成
# =============================================================================


def step_section(f: SBFunction2, R: int, q: Poly) -> SectionFunction:
    """R ≥ 0 の切断面（v ↦ ∫f(u, v - h̄(u)) du の (0, 0) での持ち上げ）。"""
    if R < 0:
        raise InvalidInput(f"step_section needs a non-negative depth, got {R}")
    field = q.field
    hbar = q.reduce() if R == 0 else Poly.zero(field, Level.K)
    component = SectionComponent(ComponentKind.STEP, field.two(0), 0, 0, hbar, f=f)
    return SectionFunction(field, R, (component,))


def section_nonsingular(f: SBFunction2, R: int, q: Poly) -> SectionFunction:
    """Φ の非特異部分の切断面。

    Args:
        f: K×K 上の階段関数
        R: 負の深さ
        q: 正規化多項式（q̄' ≠ 0）

    Returns:
        SectionFunction: J(v)·X^{-R} の (0, R) での持ち上げ
    """
    if R >= 0:
        raise InvalidInput(f"section_nonsingular needs a negative depth, got {R}")
    qbar = q.reduce()
    check_fiber_class(qbar)
    component = SectionComponent(
        ComponentKind.NONSINGULAR, q.field.two(0), R, -R, qbar, f=f
    )
    return SectionFunction(q.field, R, (component,))


def section_singular(
    f: SBFunction2, R: int, q: Poly, y: TwoElement, precision: int | None = None
) -> RatFunc:
    """y での Φ の特異部分の x 積分を逆像の分解から直接求める。

    剰余が q̄' の根である片のうち ψ_j が定数でないものについて
    Σ ∫f(ā_j, y0_A - ψ_j(u)) du·X^{c_j} をとる（y0 = t^{-R}y、A = -R）。
    """
    if R >= 0:
        raise InvalidInput(f"section_singular needs a negative depth, got {R}")
    if y.valuation().below(R):
        return RatFunc.zero()
    A = -R
    y0 = y.shift(A)
    dec = decompose_preimage(q, y0, A, precision)
    dq = q.reduce().derivative()
    offset = y0.coefficient(A)
    total = RatFunc.zero()
    for piece in dec.pieces:
        if piece.psi.is_constant:
            continue
        a_bar = piece.ideal.center.residue()
        if dq.evaluate(a_bar).provably_nonzero():
            continue
        kernel = f.slice_at(a_bar)
        value = _pushforward(piece.psi, offset, kernel)
        total = total + RatFunc.monomial(value, piece.ideal.exponent)
    return total


def _expand(
    out: list[SectionComponent],
    kernel: SBFunction,
    depth: int,
    Q: Poly,
    shift: TwoElement,
    e: int,
    precision: int | None,
) -> None:
    """y ↦ X^e·∫_{O_F} k^0(y - shift - t^depth·Q(x)) dx を成分に展開する。"""
    if depth >= 1 or kernel.is_zero:
        return
    Qbar = Q.reduce()
    if depth == 0:
        out.append(
            SectionComponent(ComponentKind.LEVEL, shift, 0, e, Qbar, kernel=kernel)
        )
        return
    if is_purely_inseparable(Qbar):
        raise UnsupportedFiberStructure(
            f"frozen polynomial {Qbar} is purely inseparable at depth {depth}"
        )
    out.append(
        SectionComponent(
            ComponentKind.FIBRE, shift, depth, e - depth, Qbar, kernel=kernel
        )
    )
    for root in roots_over_K(Qbar.derivative(), precision):
        norm = taylor_normalize(Q, Q.field.two(root.value), 1)
        _expand(
            out,
            kernel,
            depth + norm.R,
            norm.normalized,
            shift + norm.constant.shift(depth),
            e + 1,
            precision,
        )


def section_singular_fn(
    f: SBFunction2, R: int, q: Poly, precision: int | None = None
) -> SectionFunction:
    """Φ の特異部分の切断面を凍結した核の成分として求める。

    Args:
        f: K×K 上の階段関数
        R: 負の深さ
        q: 正規化多項式
        precision: 根の π_K 進精度（省略時は設定値）

    Returns:
        SectionFunction: FIBRE・LEVEL 成分の和（R = -1 では空）
    """
    if R >= 0:
        raise InvalidInput(f"section_singular_fn needs a negative depth, got {R}")
    field = q.field
    qbar = q.reduce()
    if is_purely_inseparable(qbar):
        if R == -1:
            return SectionFunction(field, R)
        raise UnsupportedFiberStructure(
            f"purely inseparable reduction {qbar} at depth {R}"
        )
    components: list[SectionComponent] = []
    for root in roots_over_K(qbar.derivative(), precision):
        sigma = root.value
        norm = taylor_normalize(q, field.two(sigma), 1)
        _expand(
            components,
            f.slice_at(sigma),
            R + norm.R,
            norm.normalized,
            norm.constant.shift(R),
            1,
            precision,
        )
    logger.debug(f"section_singular_fn(R={R}, q={q}) -> {len(components)} components")
    return SectionFunction(field, R, tuple(components))
