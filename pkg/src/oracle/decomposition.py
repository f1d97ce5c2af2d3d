"""分解の総当たり検証モジュール。

格子点 x ごとに q(x) ∈ b + t^A·O_F を直接評価し、x がちょうど一つの
片に入ることと比べる。片に入る点では ψ を代入で確かめる。
所属の判定は t 進付値だけで行い、分解側のコードは使わない。
"""

from src.decompose import Decomposition, Piece
from src.errors import FubiniError, InvalidInput
from src.logging.logger import get_logger
from src.oracle.grid import GridSpec, integral_points
from src.oracle.report import OracleReport, OracleStatus, Witness, minimal_witnesses
from src.polyarith import Poly
from src.tower import TwoElement

logger = get_logger(__name__)


def _inside(x: TwoElement, center: TwoElement, exponent: int) -> bool:
    return (x - center).valuation().at_least(exponent)


def _psi_mismatch(q: Poly, x: TwoElement, piece: Piece, A: int) -> bool:
    """ψ(res((x - a)t^{-c})) と res((q(x) - b)t^{-A}) が異なるか。"""
    approx = piece.approx
    lhs = (q.evaluate(x) - approx.b).shift(-A).residue()
    xbar = (x - approx.a).shift(-piece.ideal.exponent).residue()
    return (approx.psi.evaluate(xbar) - lhs).provably_nonzero()


def verify_decomposition(
    q: Poly, b: TwoElement, A: int, dec: Decomposition, grid: GridSpec
) -> OracleReport:
    """分解を格子上で検証する。

    Args:
        q: F[X] の整係数多項式
        b: 目標の中心
        A: 目標の深さ
        dec: 検証する分解
        grid: 格子（t_depth ≥ A + 1）

    Returns:
        OracleReport: 同値性・互いに素・ψ の代入・片の数の上界の検証結果
    """
    if grid.t_depth < A + 1:
        raise InvalidInput(
            f"grid t_depth {grid.t_depth} must be at least A + 1 = {A + 1}"
        )
    points = integral_points(q.field, grid)
    candidates: list[Witness] = []
    undecided = 0
    hits_per_piece = [0] * len(dec.pieces)

    bound = q.degree**A
    if len(dec.pieces) > bound:
        candidates.append(
            Witness(
                "piece_count", str(len(dec.pieces)), f"more than deg(q)^A = {bound}"
            )
        )

    for x in points:
        try:
            in_target = _inside(q.evaluate(x), b, A)
            hits = [
                i
                for i, piece in enumerate(dec.pieces)
                if _inside(x, piece.ideal.center, piece.ideal.exponent)
            ]
            if in_target and not hits:
                detail = "q(x) in target but x in no piece"
                candidates.append(Witness("completeness", str(x), detail))
            elif len(hits) > 1:
                detail = f"x in pieces {hits}"
                candidates.append(Witness("disjointness", str(x), detail))
            elif hits and not in_target:
                detail = f"x in piece {hits[0]} but q(x) misses target"
                candidates.append(Witness("soundness", str(x), detail))
            for i in hits:
                hits_per_piece[i] += 1
                if _psi_mismatch(q, x, dec.pieces[i], A):
                    detail = f"substitution fails for piece {i}"
                    candidates.append(Witness("psi", str(x), detail))
        except FubiniError as e:
            undecided += 1
            logger.debug(f"verify_decomposition: undecided at {x}: {e}")

    notes = []
    if undecided:
        notes.append(
            f"{undecided} grid points could not be decided at working precision"
        )
    empty = [
        str(p.ideal)
        for p, n in zip(dec.pieces, hits_per_piece, strict=True)
        if n == 0
    ]
    if empty:
        notes.append(f"pieces with no grid point: {', '.join(empty)}")

    status = OracleStatus.FAIL if candidates else OracleStatus.PASS
    report = OracleReport(
        "verify-decomposition",
        status,
        len(points),
        minimal_witnesses(candidates),
        {"pieces": str(len(dec.pieces)), "grid": str(grid)},
        tuple(notes),
    )
    logger.info(
        f"verify_decomposition(q={q}, A={A}) -> {status.value} "
        f"on {len(points)} points"
    )
    return report
