"""シナリオサービスモジュール。

同梱のシナリオファイル（JSON）を読み込んで実行し、期待値と比べる。
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.decompose import TranslatedIdeal, membership
from src.errors import FubiniError, ParseError, UnknownScenario
from src.logging.logger import get_logger
from src.measure import RatFunc
from src.polyarith import Poly, roots_over_K
from src.schemas.models import (
    DecomposeRequest,
    FubiniRequest,
    IntegrateRequest,
    JIntegralRequest,
    NamedConstant,
    Scenario,
    ScenarioReport,
)
from src.services.engine import run_decompose, run_fubini, run_integrate, run_j_integral
from src.tower import FieldTowerSpec, Level, parse_element, parse_field
from src.tower.parser import Constant

logger = get_logger(__name__)

# 同梱シナリオのディレクトリ
SCENARIO_DIR = Path(__file__).resolve().parent.parent / "cli" / "scenarios"


# =============================================================================
# 読み込み
# =============================================================================


def list_scenarios(directory: Path = SCENARIO_DIR) -> list[str]:
    """同梱シナリオの名前（名前順）。"""
    return sorted(path.stem for path in directory.glob("*.json"))


def load_scenario(name: str, directory: Path = SCENARIO_DIR) -> Scenario:
    """名前でシナリオを読み込む。

    Args:
        name: シナリオ名
        directory: シナリオファイルのディレクトリ

    Returns:
        Scenario: 検証済みのシナリオ
    """
    path = directory / f"{name}.json"
    if not path.is_file():
        raise UnknownScenario(name)
    try:
        scenario = Scenario.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, ValidationError) as e:
        message = f"invalid scenario file {path.name}: {e}"
        raise ParseError(message, text=path.name) from e
    if scenario.name != name:
        message = f"scenario file {path.name} is named {scenario.name!r}"
        raise ParseError(message, text=path.name)
    return scenario


def resolve_constants(
    field: FieldTowerSpec, constants: dict[str, NamedConstant]
) -> dict[str, Constant]:
    """名前付き定数を K の根として求める（剰余が一致する根を選ぶ）。"""
    resolved: dict[str, Constant] = {}
    for name, spec in constants.items():
        poly = Poly.parse(spec.poly, field, Level.K)
        roots = roots_over_K(poly)
        matches = [r.value for r in roots if r.value.residue() == spec.residue]
        if len(matches) != 1:
            raise ParseError(
                f"constant {name}: {len(matches)} roots of {spec.poly} "
                f"with residue {spec.residue}",
                text=spec.poly,
            )
        resolved[name] = matches[0]
    return resolved


# =============================================================================
# 比較
# =============================================================================


def _same_ratfunc(actual: str | None, expected: str | None) -> bool:
    if actual is None or expected is None:
        return actual is expected
    return RatFunc.parse(actual) == RatFunc.parse(expected)


def _diff_pieces(
    field: FieldTowerSpec,
    actual: list[dict[str, Any]],
    expected: list[dict[str, Any]],
    constants: dict[str, Constant],
) -> list[str]:
    """片の集合として比べる。中心は片に属するか、ψ は差が零多項式かで判定する。"""
    mismatches = []
    if len(actual) != len(expected):
        mismatches.append(f"pieces: expected {len(expected)}, got {len(actual)}")
    unmatched = list(actual)
    for want in expected:
        center = parse_element(want["center"], field, constants)
        psi = Poly.parse(want["psi"], field, Level.K, constants)
        for got in unmatched:
            if got["exponent"] != want["exponent"]:
                continue
            got_center = parse_element(got["center"], field)
            if not membership(center, TranslatedIdeal(got_center, got["exponent"])):
                continue
            if (Poly.parse(got["psi"], field, Level.K) - psi).is_zero:
                unmatched.remove(got)
                break
        else:
            mismatches.append(
                f"pieces: missing {want['center']} + t^{want['exponent']} "
                f"(psi {want['psi']})"
            )
    return mismatches


def _diff(
    scenario: Scenario, result: dict[str, Any], constants: dict[str, Constant]
) -> list[str]:
    field = parse_field(scenario.field)
    mismatches = []
    for key, want in scenario.expected.items():
        got = result.get(key)
        if key == "pieces":
            mismatches += _diff_pieces(field, got or [], want, constants)
        elif key in ("dydx", "dxdy", "integral", "extended_dxdy"):
            if not _same_ratfunc(got, want):
                mismatches.append(f"{key}: expected {want}, got {got}")
        elif key in ("value", "haar_integral"):
            if Fraction(got) != Fraction(want):
                mismatches.append(f"{key}: expected {want}, got {got}")
        elif got != want:
            mismatches.append(f"{key}: expected {want!r}, got {got!r}")
    return mismatches


# =============================================================================
# 実行
# =============================================================================


def _execute(scenario: Scenario, constants: dict[str, Constant]) -> dict[str, Any]:
    payload = {**scenario.inputs, "field": scenario.field}
    try:
        if scenario.command == "decompose":
            return run_decompose(DecomposeRequest(**payload), constants).model_dump()
        if scenario.command == "integrate":
            return run_integrate(IntegrateRequest(**payload)).model_dump()
        if scenario.command == "fubini":
            return run_fubini(FubiniRequest(**payload)).model_dump()
        return run_j_integral(JIntegralRequest(**payload)).model_dump()
    except ValidationError as e:
        raise ParseError(f"invalid inputs in scenario {scenario.name}: {e}") from e


def run_scenario(name: str, directory: Path = SCENARIO_DIR) -> ScenarioReport:
    """シナリオを実行して期待値と比べる。

    Args:
        name: シナリオ名
        directory: シナリオファイルのディレクトリ

    Returns:
        ScenarioReport: PASS / FAIL と差異の一覧
    """
    scenario = load_scenario(name, directory)
    field = parse_field(scenario.field)
    constants = resolve_constants(field, scenario.constants)
    result = _execute(scenario, constants)
    try:
        mismatches = _diff(scenario, result, constants)
    except (FubiniError, KeyError, TypeError, ValueError) as e:
        mismatches = [f"cannot compare: {e}"]
    status = "FAIL" if mismatches else "PASS"
    if mismatches:
        logger.warning(f"scenario {name}: FAIL {mismatches}")
    else:
        logger.info(f"scenario {name}: PASS")
    return ScenarioReport(
        name=name, status=status, mismatches=mismatches, result=result
    )


def run_all(directory: Path = SCENARIO_DIR) -> list[ScenarioReport]:
    """全シナリオを名前順に実行する。"""
    return [run_scenario(name, directory) for name in list_scenarios(directory)]
