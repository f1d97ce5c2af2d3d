"""フビニ判定モジュール。

深さ R と正規化多項式 q から二つの反復積分を求め、Φ が可積分か、
両者が一致するかを判定する。判定は構成した表示と発散の証明に基づき、
どちらも得られなければ UNKNOWN とする。
"""

from dataclasses import dataclass, replace
from enum import Enum

from src.config.settings import get_settings
from src.errors import FubiniError, UnsupportedFiberStructure
from src.fubini.appendix import j_integral
from src.fubini.data import ConjectureData, dydx_integral, normalize
from src.fubini.extended import extended_null_convention
from src.fubini.sections import (
    SectionFunction,
    section_nonsingular,
    section_singular_fn,
    step_section,
)
from src.fubini.tails import GradedTerm, certify_divergence
from src.logging.logger import get_logger
from src.measure import RatFunc, SBFunction2
from src.polyarith import Poly, is_purely_inseparable

logger = get_logger(__name__)


class VerdictKind(str, Enum):
    """判定の種類。"""

    HOLDS = "HOLDS"
    NOT_INTEGRABLE = "NOT_INTEGRABLE"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class FubiniVerdict:
    """判定結果。

    Attributes:
        kind: 判定の種類
        dydx: ∫∫Φ dy dx（常に計算される）
        dxdy: ∫∫Φ dx dy（求まった場合）
        R: 深さ（平行移動の場合は None）
        q: 正規化多項式（平行移動の場合は None）
        section: 求めた切断面関数
        witness: NOT_INTEGRABLE の証拠となる特異部分の切断面
        divergent: 発散する裾の証明
        diagnostics: 診断メッセージ
        extended_dxdy: 拡張規約による dxdy（拡張モードのみ、非厳密）
    """

    kind: VerdictKind
    dydx: RatFunc
    dxdy: RatFunc | None = None
    R: int | None = None
    q: Poly | None = None
    section: SectionFunction | None = None
    witness: SectionFunction | None = None
    divergent: tuple[GradedTerm, ...] = ()
    diagnostics: tuple[str, ...] = ()
    extended_dxdy: RatFunc | None = None

    @property
    def value(self) -> RatFunc | None:
        """HOLDS のときの共通の値。"""
        return self.dxdy if self.kind == VerdictKind.HOLDS else None

    def scaled(self, exponent: int) -> "FubiniVerdict":
        """積分値に X^exponent を掛けた判定を返す。"""
        factor = RatFunc.monomial(1, exponent)
        return replace(
            self,
            dydx=self.dydx * factor,
            dxdy=None if self.dxdy is None else self.dxdy * factor,
            extended_dxdy=None
            if self.extended_dxdy is None
            else self.extended_dxdy * factor,
        )


def _nonsingular_integral(
    qbar: Poly, f: SBFunction2, dydx: RatFunc
) -> tuple[RatFunc, list[str]]:
    """∫J を求める。扱えない場合は変数変換の恒等式 ∫J = ∫∫f を用いる。"""
    try:
        return RatFunc.constant(j_integral(qbar, f)), []
    except UnsupportedFiberStructure as e:
        note = f"j_integral unavailable ({e}); using the change-of-variables identity"
        return dydx, [note]


def _classify(
    f: SBFunction2, R: int, q: Poly, dydx: RatFunc, extended: bool
) -> FubiniVerdict:
    if R >= 0:
        section = step_section(f, R, q)
        return FubiniVerdict(VerdictKind.HOLDS, dydx, dydx, R, q, section=section)

    qbar = q.reduce()
    pure = is_purely_inseparable(qbar)
    if R == -1 and pure:
        zero = RatFunc.zero()
        empty = SectionFunction(q.field, R)
        if dydx.is_zero:
            return FubiniVerdict(VerdictKind.HOLDS, dydx, zero, R, q, section=empty)
        return FubiniVerdict(
            VerdictKind.COUNTEREXAMPLE, dydx, zero, R, q, section=empty
        )
    if pure:
        return FubiniVerdict(
            VerdictKind.UNKNOWN,
            dydx,
            R=R,
            q=q,
            diagnostics=(f"purely inseparable reduction {qbar} at depth {R} < -1",),
        )

    ns_value, diagnostics = _nonsingular_integral(qbar, f, dydx)
    if ns_value != dydx:
        return FubiniVerdict(
            VerdictKind.UNKNOWN,
            dydx,
            R=R,
            q=q,
            diagnostics=(f"nonsingular integral {ns_value} differs from {dydx}",),
        )
    try:
        nonsingular = section_nonsingular(f, R, q)
    except UnsupportedFiberStructure as e:
        if R != -1:
            raise
        nonsingular = None
        diagnostics.append(str(e))
    if R == -1:
        return FubiniVerdict(
            VerdictKind.HOLDS,
            dydx,
            ns_value,
            R,
            q,
            section=nonsingular,
            diagnostics=tuple(diagnostics),
        )

    assert nonsingular is not None
    singular = section_singular_fn(f, R, q)
    section = nonsingular + singular
    active = [c for c in singular.frozen_components if c.kernel_mass != 0]
    if not active:
        return FubiniVerdict(
            VerdictKind.HOLDS,
            dydx,
            ns_value,
            R,
            q,
            section=section,
            diagnostics=tuple(diagnostics),
        )

    terms, problems = certify_divergence(active)
    diagnostics.extend(problems)
    divergent = tuple(t for t in terms if t.divergent)
    if divergent:
        extended_value = None
        if extended:
            extended_value = ns_value + extended_null_convention(singular)
        return FubiniVerdict(
            VerdictKind.NOT_INTEGRABLE,
            dydx,
            R=R,
            q=q,
            section=section,
            witness=singular,
            divergent=divergent,
            diagnostics=tuple(diagnostics),
            extended_dxdy=extended_value,
        )
    diagnostics.append(
        f"{len(active)} singular components carry mass "
        "but no divergent tail was certified"
    )
    return FubiniVerdict(
        VerdictKind.UNKNOWN,
        dydx,
        R=R,
        q=q,
        section=section,
        diagnostics=tuple(diagnostics),
    )


def classify(
    f: SBFunction2, R: int, q: Poly, extended: bool | None = None
) -> FubiniVerdict:
    """(f, R, q) に対する Φ の判定を返す。

    Args:
        f: K×K 上の階段関数
        R: 深さ
        q: 正規化多項式
        extended: 拡張規約を使うか（省略時は設定値）

    Returns:
        FubiniVerdict: 判定（失敗は UNKNOWN と診断になる）
    """
    if extended is None:
        extended = get_settings().extended_mode
    dydx = dydx_integral(f, R, q)
    try:
        verdict = _classify(f, R, q, dydx, extended)
    except FubiniError as e:
        logger.warning(f"classify(R={R}, q={q}) failed: {e}")
        verdict = FubiniVerdict(
            VerdictKind.UNKNOWN, dydx, R=R, q=q, diagnostics=(f"{e.code}: {e}",)
        )
    if verdict.kind == VerdictKind.UNKNOWN:
        logger.warning(f"classify(R={R}, q={q}) -> UNKNOWN {list(verdict.diagnostics)}")
    else:
        logger.info(
            f"classify(R={R}, q={q}) -> {verdict.kind.value} "
            f"(dydx={verdict.dydx}, dxdy={verdict.dxdy})"
        )
    return verdict


def check_conjecture(
    data: ConjectureData, extended: bool | None = None
) -> FubiniVerdict:
    """生のデータを正規化して判定し、X^{n1+n2} 倍した結果を返す。"""
    if data.h.is_constant:
        value = RatFunc.monomial(data.f.haar_integral(), data.exponent)
        logger.info(f"check_conjecture: constant h is the translation case -> {value}")
        return FubiniVerdict(
            VerdictKind.HOLDS,
            value,
            value,
            diagnostics=("constant h: translation invariance",),
        )
    norm = normalize(data)
    return classify(data.f, norm.R, norm.q, extended).scaled(norm.exponent)
