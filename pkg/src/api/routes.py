"""FastAPIエンドポイント定義モジュール。

分解・積分・フビニ判定・シナリオ実行のAPIエンドポイントを提供する。
"""

from collections.abc import Callable
from typing import TypeVar

from fastapi import APIRouter, HTTPException, status

from src.errors import FubiniError, UnknownScenario
from src.logging.logger import get_logger
from src.schemas.models import (
    DecomposeRequest,
    DecomposeResponse,
    FubiniRequest,
    IntegrateRequest,
    IntegrateResponse,
    JIntegralRequest,
    JIntegralResponse,
    ScenarioReport,
    VerdictModel,
)
from src.services.engine import run_decompose, run_fubini, run_integrate, run_j_integral
from src.services.scenarios import list_scenarios, run_scenario

logger = get_logger(__name__)

router = APIRouter()

T = TypeVar("T")


def _call(fn: Callable[[], T]) -> T:
    """エンジン例外をHTTPエラーに変換して実行する。"""
    try:
        return fn()
    except UnknownScenario as e:
        raise HTTPException(
            status_code=status.HTTP_404_NOT_FOUND, detail=e.to_dict()
        ) from e
    except FubiniError as e:
        if e.resource:
            logger.warning(f"Resource exhausted: {e}")
            code = status.HTTP_503_SERVICE_UNAVAILABLE
        else:
            logger.info(f"Rejected request: {e}")
            code = status.HTTP_422_UNPROCESSABLE_ENTITY
        raise HTTPException(status_code=code, detail=e.to_dict()) from e


# =============================================================================
# 計算エンドポイント
# =============================================================================


@router.post("/decompose", response_model=DecomposeResponse, tags=["Engine"])
def decompose(request: DecomposeRequest) -> DecomposeResponse:
    """q^{-1}(b + t^A O_F) を平行移動イデアルに分解する。"""
    return _call(lambda: run_decompose(request))


@router.post("/integrate", response_model=IntegrateResponse, tags=["Engine"])
def integrate(request: IntegrateRequest) -> IntegrateResponse:
    """持ち上げ関数の線形結合の F 値積分を返す。"""
    return _call(lambda: run_integrate(request))


@router.post("/fubini", response_model=VerdictModel, tags=["Engine"])
def fubini(request: FubiniRequest) -> VerdictModel:
    """予想データに対する二つの反復積分を求め、判定を返す。

    深さ R ≤ -2 で証明が得られない場合は UNKNOWN と診断を返す。
    """
    return _call(lambda: run_fubini(request))


@router.post("/j-integral", response_model=JIntegralResponse, tags=["Engine"])
def j_integral(request: JIntegralRequest) -> JIntegralResponse:
    """J(v) の K 上の積分を返す。"""
    return _call(lambda: run_j_integral(request))


# =============================================================================
# シナリオエンドポイント
# =============================================================================


@router.get("/scenarios", response_model=list[str], tags=["Scenario"])
def get_scenarios() -> list[str]:
    """同梱シナリオの名前を返す。"""
    return list_scenarios()


@router.post("/scenarios/{name}", response_model=ScenarioReport, tags=["Scenario"])
def post_scenario(name: str) -> ScenarioReport:
    """シナリオを実行し、期待値との差異を返す。"""
    return _call(lambda: run_scenario(name))
