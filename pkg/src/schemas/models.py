"""Pydanticモデル定義モジュール。

API のリクエスト/レスポンスと CLI の JSON ファイル形式を定義する。
元・多項式・有理関数はすべてエンジンの文字列表現で受け渡す。
"""

from typing import Literal

from pydantic import BaseModel, Field, field_validator

from src.errors import ParseError

# =============================================================================
# 関数
# =============================================================================


class SBTerm(BaseModel):
    """K 上の階段関数の一項 value·Char_{center + π_K^r O_K}。"""

    center: str = Field(description="球の中心（K の元）")
    radius_exponent: int | None = Field(
        default=None, description="球の半径の指数 r。null なら一点"
    )
    value: str = Field(default="1", description="値（有理数）")


class SB2Term(BaseModel):
    """K×K 上の階段関数の一項 value·Char_{B1×B2}。"""

    centers: tuple[str, str] = Field(description="二つの球の中心")
    radius_exponents: tuple[int | None, int | None] = Field(
        description="二つの球の半径の指数（null は一点）"
    )
    value: str = Field(default="1", description="値（有理数）")


class LiftedTermModel(BaseModel):
    """coeff·f^{a,n}。"""

    function: list[SBTerm] = Field(description="持ち上げる K 上の階段関数")
    a: str = Field(default="0", description="平行移動の中心（F の元）")
    n: int = Field(default=0, description="持ち上げの指数")
    coeff: str = Field(default="1", description="Q(X) の係数")


class ConjectureDataModel(BaseModel):
    """(a1, a2, n1, n2) のデータ。"""

    a1: str = Field(default="0", description="x 側の中心")
    a2: str = Field(default="0", description="y 側の中心")
    n1: int = Field(default=0, description="x 側の指数")
    n2: int = Field(default=0, description="y 側の指数")

    @classmethod
    def parse(cls, text: str) -> "ConjectureDataModel":
        """`a1,a2,n1,n2` の形の指定を読む。"""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            message = f"data must look like a1,a2,n1,n2, got {text!r}"
            raise ParseError(message, text=text)
        try:
            n1, n2 = int(parts[2]), int(parts[3])
        except ValueError as e:
            message = f"n1 and n2 must be integers, got {text!r}"
            raise ParseError(message, text=text) from e
        return cls(a1=parts[0], a2=parts[1], n1=n1, n2=n2)


# =============================================================================
# 分解
# =============================================================================


class DecomposeRequest(BaseModel):
    """分解リクエスト。"""

    field: str = Field(description="体の塔の仕様（例: Qp(5)((t))）")
    q: str = Field(description="F[X] の整係数多項式")
    b: str = Field(default="0", description="目標の中心")
    A: int = Field(ge=1, description="目標の深さ")
    precision: int | None = Field(default=None, description="根を求める π_K 進精度")


class PieceModel(BaseModel):
    """分解の一片。"""

    center: str = Field(description="片の中心 a")
    exponent: int = Field(description="片の指数 c")
    psi: str = Field(description="剰余体近似 ψ ∈ K[X]")
    target: str = Field(description="目標 b + t^A O_F")


class DecomposeResponse(BaseModel):
    """分解レスポンス。"""

    field: str = Field(description="体の塔の仕様")
    q: str = Field(description="分解した多項式")
    pieces: list[PieceModel] = Field(description="片の一覧")


# =============================================================================
# 積分
# =============================================================================


class IntegrateRequest(BaseModel):
    """F 値積分リクエスト。"""

    field: str = Field(description="体の塔の仕様")
    function: list[LiftedTermModel] = Field(description="Σ coeff·f^{a,n} の項")


class IntegrateResponse(BaseModel):
    """F 値積分レスポンス。"""

    integral: str = Field(description="積分値（Q(X) の元）")


class FubiniRequest(BaseModel):
    """フビニ判定リクエスト。"""

    field: str = Field(description="体の塔の仕様")
    h: str = Field(description="F[X] の多項式 h")
    data: ConjectureDataModel = Field(
        default_factory=ConjectureDataModel, description="(a1, a2, n1, n2)"
    )
    f: list[SB2Term] = Field(description="K×K 上の階段関数")
    extended: bool | None = Field(default=None, description="拡張規約を使うか")

    @field_validator("data", mode="before")
    @classmethod
    def _data_from_text(cls, value: object) -> object:
        if isinstance(value, str):
            try:
                return ConjectureDataModel.parse(value)
            except ParseError as e:
                raise ValueError(str(e)) from e
        return value


class VerdictModel(BaseModel):
    """フビニ判定の結果。"""

    verdict: Literal["HOLDS", "COUNTEREXAMPLE", "NOT_INTEGRABLE", "UNKNOWN"] = Field(
        description="判定"
    )
    dydx: str = Field(description="∫∫Φ dy dx")
    dxdy: str | None = Field(default=None, description="∫∫Φ dx dy")
    depth: int | None = Field(default=None, description="深さ R")
    normalised_poly: str | None = Field(default=None, description="正規化多項式 q")
    section: str | None = Field(default=None, description="切断面関数")
    witness: str | None = Field(default=None, description="積分不能の証拠となる切断面")
    divergent: list[str] = Field(default_factory=list, description="発散する裾の証明")
    diagnostics: list[str] = Field(default_factory=list, description="診断メッセージ")
    extended_dxdy: str | None = Field(
        default=None, description="拡張規約による dxdy（非厳密）"
    )


class JIntegralRequest(BaseModel):
    """J の積分リクエスト。"""

    field: str = Field(description="体の塔の仕様")
    qbar: str = Field(description="K[X] の多項式 q̄")
    f: list[SB2Term] = Field(description="K×K 上の階段関数")


class JIntegralResponse(BaseModel):
    """J の積分レスポンス。"""

    value: str = Field(description="∫_K J(v) dv")
    haar_integral: str = Field(description="∫∫f")


# =============================================================================
# オラクル
# =============================================================================


class OracleDecompositionRequest(DecomposeRequest):
    """分解の検証リクエスト。"""

    grid: str = Field(default="4:2", description="格子 t:u")


class OracleLawsRequest(BaseModel):
    """積分の法則の検証リクエスト。"""

    field: str = Field(description="体の塔の仕様")
    samples: int = Field(default=100, ge=0, description="試す関数の数")
    grid: str = Field(default="3:1", description="格子 t:u")
    seed: int | None = Field(default=None, description="乱数の種")


class OracleRepeatedRequest(FubiniRequest):
    """反復積分の照合リクエスト。"""

    grid: str = Field(default="4:2", description="格子 t:u")
    seed: int | None = Field(default=None, description="乱数の種")
    x0: str | None = Field(default=None, description="X の特殊化点（0 < x0 < 1）")


class WitnessModel(BaseModel):
    """検証に失敗した点。"""

    kind: str = Field(description="失敗の種類")
    point: str = Field(description="点")
    detail: str = Field(default="", description="補足")


class OracleReportModel(BaseModel):
    """オラクルの検証結果。"""

    check: str = Field(description="検証の名前")
    status: Literal["PASS", "FAIL", "INCONCLUSIVE"] = Field(description="結果")
    checked: int = Field(description="調べた点・セルの数")
    witnesses: list[WitnessModel] = Field(default_factory=list, description="証拠")
    values: dict[str, str] = Field(default_factory=dict, description="計算した値")
    notes: list[str] = Field(default_factory=list, description="注記")


# =============================================================================
# シナリオ
# =============================================================================

ScenarioCommand = Literal["decompose", "integrate", "fubini", "j-integral"]


class NamedConstant(BaseModel):
    """多項式の根として定まる K の定数（剰余で根を選ぶ）。"""

    poly: str = Field(description="K[X] の多項式")
    residue: int = Field(description="選ぶ根の剰余")


class Scenario(BaseModel):
    """同梱シナリオのファイル形式。"""

    name: str = Field(description="シナリオ名")
    description: str = Field(default="", description="説明")
    provenance: str = Field(description="期待値の出典（計算例・導出方法）")
    command: ScenarioCommand = Field(description="実行するコマンド")
    field: str = Field(description="体の塔の仕様")
    inputs: dict = Field(description="コマンドの入力（field 以外）")
    expected: dict = Field(description="期待する出力")
    constants: dict[str, NamedConstant] = Field(
        default_factory=dict, description="期待値で使う名前付き定数"
    )

    @field_validator("provenance")
    @classmethod
    def _provenance_required(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("every scenario needs a provenance")
        return value


class ScenarioReport(BaseModel):
    """シナリオの実行結果。"""

    name: str = Field(description="シナリオ名")
    status: Literal["PASS", "FAIL"] = Field(description="結果")
    mismatches: list[str] = Field(default_factory=list, description="期待値との差異")
    result: dict = Field(default_factory=dict, description="実際の出力")
