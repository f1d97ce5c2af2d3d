"""コマンドラインインターフェースモジュール。

使用例:
  local-field-fubini decompose --q "X^3 + X^2 + t^2" --A 2
  local-field-fubini --field "Fq(5,1)((u))((t))" fubini --h "t^-1*X^5" --f square.json
  local-field-fubini --json oracle verify-laws --samples 100 --grid 3:1
  local-field-fubini scenario --all

終了コード: 0 成功、1 不一致・検証失敗、2 入力エラー、3 資源（予算・格子）の枯渇。
"""

import json
import sys
from argparse import ArgumentParser, Namespace
from collections.abc import Callable
from pathlib import Path
from typing import Any

from pydantic import BaseModel, TypeAdapter, ValidationError

from src.config.settings import get_settings
from src.errors import FubiniError, ParseError
from src.logging.logger import get_logger
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
    OracleDecompositionRequest,
    OracleLawsRequest,
    OracleReportModel,
    OracleRepeatedRequest,
    SB2Term,
    ScenarioReport,
    VerdictModel,
)
from src.services.engine import (
    run_decompose,
    run_fubini,
    run_integrate,
    run_j_integral,
    run_oracle_decomposition,
    run_oracle_laws,
    run_oracle_repeated,
)
from src.services.scenarios import list_scenarios, run_all, run_scenario

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

DEFAULT_FIELD = "Qp(5)((t))"


# =============================================================================
# 引数
# =============================================================================


def build_parser() -> ArgumentParser:
    """コマンドラインのパーサーを組み立てる。"""
    parser = ArgumentParser(
        prog="local-field-fubini",
        description="二次元局所体 K((t)) 上の積分とフビニ判定",
    )
    parser.add_argument(
        "--field", default=DEFAULT_FIELD, help="Qp(p)((t)) or Fq(p,f)((u))((t))"
    )
    parser.add_argument("--json", action="store_true", help="print JSON reports")
    parser.add_argument("--seed", type=int, help="random seed for oracles")
    parser.add_argument("--precision", type=int, help="working pi_K-adic precision")
    commands = parser.add_subparsers(dest="command", required=True)

    decompose = commands.add_parser("decompose", help="decompose q^-1(b + t^A O_F)")
    _add_decompose_args(decompose)

    integrate = commands.add_parser("integrate", help="F-valued integral")
    integrate.add_argument("--function", required=True, help="lifted terms (JSON)")

    fubini = commands.add_parser("fubini", help="compare the two repeated integrals")
    _add_fubini_args(fubini)
    fubini.add_argument(
        "--extended", action="store_true", help="use the extended null convention"
    )

    j_integral = commands.add_parser("j-integral", help="integral of J over K")
    j_integral.add_argument("--qbar", required=True, help="polynomial over K")
    j_integral.add_argument("--f", required=True, help="JSON file of SB terms on KxK")

    oracle = commands.add_parser("oracle", help="brute-force checks on digit grids")
    checks = oracle.add_subparsers(dest="check", required=True)
    verify_dec = checks.add_parser("verify-decomposition")
    _add_decompose_args(verify_dec)
    verify_dec.add_argument("--grid", default="4:2", help="grid depths t:u")
    verify_laws = checks.add_parser("verify-laws")
    verify_laws.add_argument("--samples", type=int, default=100)
    verify_laws.add_argument("--grid", default="3:1", help="grid depths t:u")
    verify_rep = checks.add_parser("verify-repeated")
    _add_fubini_args(verify_rep)
    verify_rep.add_argument("--grid", default="4:2", help="grid depths t:u")
    verify_rep.add_argument("--x0", help="rational point 0 < x0 < 1 for X")

    scenario = commands.add_parser("scenario", help="run bundled scenarios")
    scenario.add_argument("name", nargs="?", help="scenario name")
    scenario.add_argument("--all", action="store_true", help="run every scenario")
    scenario.add_argument("--list", action="store_true", help="list scenario names")
    return parser


def _add_decompose_args(parser: ArgumentParser) -> None:
    parser.add_argument("--q", required=True, help='polynomial, e.g. "X^3 + X^2 + t^2"')
    parser.add_argument("--b", default="0", help="target center")
    parser.add_argument("--A", type=int, required=True, help="target depth")


def _add_fubini_args(parser: ArgumentParser) -> None:
    parser.add_argument("--h", required=True, help="polynomial h over F")
    parser.add_argument("--data", default="0,0,0,0", help="a1,a2,n1,n2")
    parser.add_argument("--f", required=True, help="JSON file of SB terms on KxK")


def _read_json(path: str, adapter: TypeAdapter) -> Any:
    """JSONファイルを読み込んでモデルとして検証する。"""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}", text=path) from e
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON in {path}: {e.msg}", e.pos, path) from e
    try:
        return adapter.validate_python(raw)
    except ValidationError as e:
        raise ParseError(f"invalid function file {path}: {e}", text=path) from e


_LIFTED = TypeAdapter(list[LiftedTermModel])
_SB2 = TypeAdapter(list[SB2Term])


def _validated(model: type[BaseModel], **values: Any) -> Any:
    try:
        return model(**values)
    except ValidationError as e:
        raise ParseError(f"invalid arguments: {e}") from e


# =============================================================================
# 出力
# =============================================================================


def _format_decompose(result: DecomposeResponse) -> str:
    lines = [f"q = {result.q} over {result.field}, {len(result.pieces)} pieces"]
    for i, p in enumerate(result.pieces):
        lines.append(
            f"  [{i}] center={p.center} exponent={p.exponent} psi={p.psi} "
            f"target={p.target}"
        )
    return "\n".join(lines)


def _format_fields(model: BaseModel) -> str:
    lines = []
    for key, value in model.model_dump().items():
        if value is None or value == []:
            continue
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines += [f"  {item}" for item in value]
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _format_oracle(report: OracleReportModel) -> str:
    lines = [f"{report.check}: {report.status} ({report.checked} checks)"]
    lines += [f"  {k} = {v}" for k, v in report.values.items()]
    for w in report.witnesses:
        lines.append(f"  witness: {w.kind} at {w.point} {w.detail}".rstrip())
    lines += [f"  note: {n}" for n in report.notes]
    return "\n".join(lines)


def _format_scenario(report: ScenarioReport) -> str:
    lines = [f"{report.name}: {report.status}"]
    lines += [f"  mismatch: {m}" for m in report.mismatches]
    return "\n".join(lines)


def _emit(args: Namespace, payload: Any, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(human)


# =============================================================================
# コマンド
# =============================================================================


def _cmd_decompose(args: Namespace) -> int:
    request = _validated(
        DecomposeRequest, field=args.field, q=args.q, b=args.b, A=args.A
    )
    result = run_decompose(request)
    _emit(args, result.model_dump(), _format_decompose(result))
    return EXIT_OK


def _cmd_integrate(args: Namespace) -> int:
    terms = _read_json(args.function, _LIFTED)
    request = IntegrateRequest(field=args.field, function=terms)
    result: IntegrateResponse = run_integrate(request)
    _emit(args, result.model_dump(), result.integral)
    return EXIT_OK


def _fubini_values(args: Namespace) -> dict[str, Any]:
    return {
        "field": args.field,
        "h": args.h,
        "data": ConjectureDataModel.parse(args.data),
        "f": _read_json(args.f, _SB2),
    }


def _cmd_fubini(args: Namespace) -> int:
    extended = args.extended or None
    request = _validated(FubiniRequest, **_fubini_values(args), extended=extended)
    result: VerdictModel = run_fubini(request)
    _emit(args, result.model_dump(), _format_fields(result))
    return EXIT_OK


def _cmd_j_integral(args: Namespace) -> int:
    f = _read_json(args.f, _SB2)
    request = JIntegralRequest(field=args.field, qbar=args.qbar, f=f)
    result: JIntegralResponse = run_j_integral(request)
    _emit(args, result.model_dump(), _format_fields(result))
    return EXIT_OK


def _cmd_oracle(args: Namespace) -> int:
    if args.check == "verify-decomposition":
        request = _validated(
            OracleDecompositionRequest,
            field=args.field,
            q=args.q,
            b=args.b,
            A=args.A,
            grid=args.grid,
        )
        report = run_oracle_decomposition(request)
    elif args.check == "verify-laws":
        request = _validated(
            OracleLawsRequest,
            field=args.field,
            samples=args.samples,
            grid=args.grid,
            seed=args.seed,
        )
        report = run_oracle_laws(request)
    else:
        request = _validated(
            OracleRepeatedRequest,
            **_fubini_values(args),
            grid=args.grid,
            seed=args.seed,
            x0=args.x0,
        )
        report = run_oracle_repeated(request)
    _emit(args, report.model_dump(), _format_oracle(report))
    return EXIT_OK if report.status == "PASS" else EXIT_MISMATCH


def _cmd_scenario(args: Namespace) -> int:
    if args.list:
        names = list_scenarios()
        _emit(args, names, "\n".join(names))
        return EXIT_OK
    if args.all:
        reports = run_all()
    elif args.name:
        reports = [run_scenario(args.name)]
    else:
        raise ParseError("scenario needs a NAME, --all or --list")
    _emit(
        args,
        [r.model_dump() for r in reports],
        "\n".join(_format_scenario(r) for r in reports),
    )
    return EXIT_OK if all(r.status == "PASS" for r in reports) else EXIT_MISMATCH


_COMMANDS: dict[str, Callable[[Namespace], int]] = {
    "decompose": _cmd_decompose,
    "integrate": _cmd_integrate,
    "fubini": _cmd_fubini,
    "j-integral": _cmd_j_integral,
    "oracle": _cmd_oracle,
    "scenario": _cmd_scenario,
}


def main(argv: list[str] | None = None) -> int:
    """CLIのエントリーポイント。

    Args:
        argv: コマンドライン引数（省略時は sys.argv）

    Returns:
        int: 終了コード
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    if args.seed is not None:
        settings.seed = args.seed
    if args.precision is not None:
        settings.mid_precision = args.precision

    try:
        return _COMMANDS[args.command](args)
    except FubiniError as e:
        logger.debug(f"{args.command} failed: {e!r}")
        if args.json:
            print(json.dumps(e.to_dict(), ensure_ascii=False), file=sys.stderr)
        else:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE if e.resource else EXIT_USAGE
