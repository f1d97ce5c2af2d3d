"""schemas パッケージ。"""

from src.schemas.models import (
    ConjectureDataModel,
    DecomposeRequest,
    DecomposeResponse,
    FubiniRequest,
    IntegrateRequest,
    IntegrateResponse,
    JIntegralRequest,
    JIntegralResponse,
    LiftedTermModel,
    NamedConstant,
    OracleDecompositionRequest,
    OracleLawsRequest,
    OracleReportModel,
    OracleRepeatedRequest,
    PieceModel,
    SB2Term,
    SBTerm,
    Scenario,
    ScenarioReport,
    VerdictModel,
    WitnessModel,
)

__all__ = [
    "ConjectureDataModel",
    "DecomposeRequest",
    "DecomposeResponse",
    "FubiniRequest",
    "IntegrateRequest",
    "IntegrateResponse",
    "JIntegralRequest",
    "JIntegralResponse",
    "LiftedTermModel",
    "NamedConstant",
    "OracleDecompositionRequest",
    "OracleLawsRequest",
    "OracleReportModel",
    "OracleRepeatedRequest",
    "PieceModel",
    "SB2Term",
    "SBTerm",
    "Scenario",
    "ScenarioReport",
    "VerdictModel",
    "WitnessModel",
]
