"""多項式の逆像の分解モジュール。

{x ∈ O_F : q(x) ∈ b + t^A·O_F} を互いに素な平行移動分数イデアルに分け、
各片に剰余体近似を付ける。深さ 0 の単根はヘンゼル持ち上げで一度に
t^A まで進め、それ以外は深さを一つずつ細分する。
"""

from dataclasses import dataclass, field

from src.config.settings import get_settings
from src.decompose.approx import ResidueApprox, residue_approximation
from src.decompose.ideal import TranslatedIdeal
from src.errors import InvalidInput
from src.logging.logger import get_logger
from src.polyarith import Poly, hensel_lift, roots_over_K
from src.tower import Level, TwoElement, working_precision

logger = get_logger(__name__)


@dataclass(frozen=True)
class Piece:
    """分解の一片。"""

    ideal: TranslatedIdeal
    approx: ResidueApprox

    @property
    def psi(self) -> Poly:
        return self.approx.psi


@dataclass(frozen=True)
class Decomposition:
    """分解結果とその問い合わせ (q, b, A)。"""

    q: Poly
    b: TwoElement
    A: int
    pieces: tuple[Piece, ...] = field(default_factory=tuple)

    @property
    def target(self) -> TranslatedIdeal:
        return TranslatedIdeal(self.b, self.A)

    def __len__(self) -> int:
        return len(self.pieces)


def decompose_preimage(
    q: Poly,
    b: TwoElement,
    A: int,
    precision: int | None = None,
    budget: int | None = None,
) -> Decomposition:
    """q の逆像 {x ∈ O_F : q(x) ∈ b + t^A O_F} を分解する。

    Args:
        q: F[X] の整係数多項式（deg ≥ 1、剰余非零）
        b: 整な目標の中心
        A: 目標の深さ（≥ 1）
        precision: 根の π_K 進精度（省略時は設定値）
        budget: 根探索の予算（省略時は設定値）

    Returns:
        Decomposition: (c, 中心の桁) 順に並んだ片の一覧
    """
    if A < 1:
        raise InvalidInput(f"decomposition depth must be at least 1, got {A}")
    if q.degree < 1:
        raise InvalidInput(f"{q} must have positive degree")
    qbar = q.reduce()
    if qbar.is_zero:
        raise InvalidInput(f"reduction of {q} vanishes")
    if not b.is_integral():
        raise InvalidInput(f"target center {b} must be integral")
    if precision is None:
        precision = get_settings().mid_precision

    with working_precision(precision):
        final = _refine(q, b, A, precision, budget)
        target = TranslatedIdeal(b, A)
        pieces = sorted(
            (Piece(ideal, residue_approximation(q, ideal, target)) for ideal in final),
            key=lambda p: p.ideal.sort_key(),
        )
    logger.info(f"decompose_preimage: q={q}, b={b}, A={A} -> {len(pieces)} pieces")
    return Decomposition(q, b, A, tuple(pieces))


def _refine(
    q: Poly, b: TwoElement, A: int, precision: int, budget: int | None
) -> list[TranslatedIdeal]:
    field_ = q.field
    final: list[TranslatedIdeal] = []
    frontier: list[tuple[TranslatedIdeal, int]] = [
        (TranslatedIdeal(field_.two(0), 0), 0)
    ]
    while frontier:
        piece, level = frontier.pop()
        if level >= A:
            final.append(piece)
            continue
        approx = residue_approximation(q, piece, TranslatedIdeal(b, level))
        phi = approx.psi - Poly.constant(field_, Level.K, b.coefficient(level))
        if phi.is_constant:
            if phi.is_zero:
                frontier.append((piece, level + 1))
            continue
        for root in roots_over_K(phi, precision, budget):
            if level == 0 and root.simple:
                lifted = hensel_lift(q, root.value, b, A, mid_precision=precision)
                final.append(TranslatedIdeal(lifted.reduced(A), A))
                continue
            center = piece.center + field_.t(piece.exponent).scale(root.value)
            frontier.append((TranslatedIdeal(center, piece.exponent + 1), level + 1))
        logger.debug(f"refined {piece} at level {level}: psi={approx.psi}")
    return final
