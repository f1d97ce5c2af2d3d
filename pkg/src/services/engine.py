"""エンジンサービスモジュール。

検証済みのモデルをエンジンのオブジェクトに変換して計算し、結果をモデルに戻す。
CLI と HTTP API はこのモジュールを共有する。
"""

from collections.abc import Mapping
from fractions import Fraction

from src.config.settings import get_settings
from src.decompose import decompose_preimage
from src.errors import ParseError
from src.fubini import (
    ConjectureData,
    FubiniVerdict,
    check_conjecture,
    classify,
    j_integral,
    normalize,
)
from src.logging.logger import get_logger
from src.measure import (
    IntegrableFunctionF,
    LiftedTerm,
    RatFunc,
    SBFunction,
    SBFunction2,
    integral_F,
)
from src.oracle import (
    GridSpec,
    OracleReport,
    verify_decomposition,
    verify_integral_laws,
    verify_repeated,
)
from src.polyarith import Poly
from src.schemas.models import (
    DecomposeRequest,
    DecomposeResponse,
    FubiniRequest,
    IntegrateRequest,
    IntegrateResponse,
    JIntegralRequest,
    JIntegralResponse,
    LiftedTermModel,
    OracleDecompositionRequest,
    OracleLawsRequest,
    OracleReportModel,
    OracleRepeatedRequest,
    PieceModel,
    SB2Term,
    SBTerm,
    VerdictModel,
    WitnessModel,
)
from src.tower import Ball, FieldTowerSpec, Level, parse_element, parse_field, parse_mid
from src.tower.parser import Constant

logger = get_logger(__name__)


# =============================================================================
# 入力の変換
# =============================================================================


def parse_value(text: str) -> Fraction:
    """有理数の文字列を読む。"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"expected a rational number, got {text!r}", text=text) from e


def _ball(field: FieldTowerSpec, center: str, radius: int | None) -> Ball:
    return Ball(parse_mid(center, field), radius)


def to_sb_function(field: FieldTowerSpec, terms: list[SBTerm]) -> SBFunction:
    return SBFunction(
        field,
        tuple(
            (_ball(field, t.center, t.radius_exponent), parse_value(t.value))
            for t in terms
        ),
    )


def to_sb_function2(field: FieldTowerSpec, terms: list[SB2Term]) -> SBFunction2:
    return SBFunction2.from_terms(
        field,
        [
            (
                _ball(field, t.centers[0], t.radius_exponents[0]),
                _ball(field, t.centers[1], t.radius_exponents[1]),
                parse_value(t.value),
            )
            for t in terms
        ],
    )


def to_integrable(
    field: FieldTowerSpec, terms: list[LiftedTermModel]
) -> IntegrableFunctionF:
    """Σ coeff·f^{a,n} を組み立てる。"""
    return IntegrableFunctionF(
        field,
        tuple(
            (
                RatFunc.parse(t.coeff),
                LiftedTerm(
                    to_sb_function(field, t.function), parse_element(t.a, field), t.n
                ),
            )
            for t in terms
        ),
    )


def to_conjecture_data(field: FieldTowerSpec, request: FubiniRequest) -> ConjectureData:
    data = request.data
    return ConjectureData(
        parse_element(data.a1, field),
        parse_element(data.a2, field),
        data.n1,
        data.n2,
        Poly.parse(request.h, field),
        to_sb_function2(field, request.f),
    )


def _grid(text: str) -> GridSpec:
    return GridSpec.parse(text, get_settings().grid_cap)


# =============================================================================
# 出力の変換
# =============================================================================


def _ratfunc(value: RatFunc | None) -> str | None:
    return None if value is None else str(value)


def verdict_model(verdict: FubiniVerdict) -> VerdictModel:
    return VerdictModel(
        verdict=verdict.kind.value,
        dydx=str(verdict.dydx),
        dxdy=_ratfunc(verdict.dxdy),
        depth=verdict.R,
        normalised_poly=None if verdict.q is None else str(verdict.q),
        section=None if verdict.section is None else str(verdict.section),
        witness=None if verdict.witness is None else str(verdict.witness),
        divergent=[str(term) for term in verdict.divergent],
        diagnostics=list(verdict.diagnostics),
        extended_dxdy=_ratfunc(verdict.extended_dxdy),
    )


def oracle_model(report: OracleReport) -> OracleReportModel:
    return OracleReportModel(
        check=report.check,
        status=report.status.value,
        checked=report.checked,
        witnesses=[
            WitnessModel(kind=w.kind, point=w.point, detail=w.detail)
            for w in report.witnesses
        ],
        values=dict(report.values),
        notes=list(report.notes),
    )


# =============================================================================
# コマンド
# =============================================================================


def run_decompose(
    request: DecomposeRequest, constants: Mapping[str, Constant] | None = None
) -> DecomposeResponse:
    """q^{-1}(b + t^A O_F) を分解する。"""
    field = parse_field(request.field)
    q = Poly.parse(request.q, field, Level.F, constants)
    b = parse_element(request.b, field, constants)
    dec = decompose_preimage(q, b, request.A, precision=request.precision)
    target = str(dec.target)
    logger.info(f"run_decompose({request.q}, A={request.A}) -> {len(dec)} pieces")
    return DecomposeResponse(
        field=str(field),
        q=str(q),
        pieces=[
            PieceModel(
                center=str(p.ideal.center),
                exponent=p.ideal.exponent,
                psi=str(p.psi),
                target=target,
            )
            for p in dec.pieces
        ],
    )


def run_integrate(request: IntegrateRequest) -> IntegrateResponse:
    """∫^F g(x) dx を求める。"""
    field = parse_field(request.field)
    value = integral_F(to_integrable(field, request.function))
    logger.info(f"run_integrate({field}) -> {value}")
    return IntegrateResponse(integral=str(value))


def run_fubini(request: FubiniRequest) -> VerdictModel:
    """予想データのフビニ判定。"""
    field = parse_field(request.field)
    verdict = check_conjecture(to_conjecture_data(field, request), request.extended)
    return verdict_model(verdict)


def run_j_integral(request: JIntegralRequest) -> JIntegralResponse:
    """∫_K J(v) dv と ∫∫f を求める。"""
    field = parse_field(request.field)
    qbar = Poly.parse(request.qbar, field, Level.K)
    f = to_sb_function2(field, request.f)
    value = j_integral(qbar, f)
    return JIntegralResponse(value=str(value), haar_integral=str(f.haar_integral()))


def run_oracle_decomposition(request: OracleDecompositionRequest) -> OracleReportModel:
    field = parse_field(request.field)
    q = Poly.parse(request.q, field)
    b = parse_element(request.b, field)
    dec = decompose_preimage(q, b, request.A, precision=request.precision)
    report = verify_decomposition(q, b, request.A, dec, _grid(request.grid))
    return oracle_model(report)


def run_oracle_laws(request: OracleLawsRequest) -> OracleReportModel:
    field = parse_field(request.field)
    grid = _grid(request.grid)
    report = verify_integral_laws(field, request.samples, grid, request.seed)
    return oracle_model(report)


def run_oracle_repeated(request: OracleRepeatedRequest) -> OracleReportModel:
    """正規化した (f, R, q) の反復積分をエンジンの判定と照合する。"""
    field = parse_field(request.field)
    data = to_conjecture_data(field, request)
    norm = normalize(data)
    verdict = classify(data.f, norm.R, norm.q, extended=False)
    x0 = None if request.x0 is None else parse_value(request.x0)
    report = verify_repeated(
        data.f,
        norm.R,
        norm.q,
        _grid(request.grid),
        verdict.dydx,
        verdict.dxdy,
        x0=x0,
        seed=request.seed,
    )
    return oracle_model(report)
