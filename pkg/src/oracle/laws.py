"""積分の法則のランダム検証モジュール。"""

import random
from collections.abc import Callable

from src.config.settings import get_settings
from src.errors import InsufficientPrecision
from src.logging.logger import get_logger
from src.measure import (
    IntegrableFunctionF,
    LiftedTerm,
    RatFunc,
    SBFunction,
    abs_value_ratfunc,
    evaluate,
    integral_F,
    scale,
    translate,
)
from src.oracle.grid import GridSpec, integral_points
from src.oracle.report import OracleReport, OracleStatus, Witness, minimal_witnesses
from src.tower import Ball, FieldTowerSpec, TwoElement

logger = get_logger(__name__)

ScaleFn = Callable[[IntegrableFunctionF, TwoElement], IntegrableFunctionF]
TranslateFn = Callable[[IntegrableFunctionF, TwoElement], IntegrableFunctionF]


def _random_function(
    rng: random.Random, field: FieldTowerSpec, points: list[TwoElement]
) -> IntegrableFunctionF:
    terms = []
    for _ in range(rng.randint(1, 3)):
        # 一点の持ち上げも混ぜる
        radius = rng.choice([None, 0, 1, 2])
        ball = Ball(field.digit(rng.randrange(field.q)), radius)
        f = SBFunction.indicator(ball, rng.randint(-3, 3) or 1)
        term = LiftedTerm(f, rng.choice(points), rng.randint(-2, 2))
        terms.append((RatFunc.monomial(rng.randint(1, 4), rng.randint(-1, 1)), term))
    return IntegrableFunctionF(field, tuple(terms))


def _random_scalar(rng: random.Random, field: FieldTowerSpec) -> TwoElement:
    lead = field.digit(rng.randrange(1, field.q))
    tail = field.digit(rng.randrange(field.q))
    m = rng.randint(-2, 2)
    return TwoElement(field, {m: lead, m + 1: tail})


def verify_integral_laws(
    field: FieldTowerSpec,
    samples: int,
    grid: GridSpec,
    seed: int | None = None,
    scale_fn: ScaleFn | None = None,
    translate_fn: TranslateFn | None = None,
) -> OracleReport:
    """線形性・平行移動不変性・拡大則をランダムな関数で確かめる。

    Args:
        field: 体の塔
        samples: 試す関数の数（0 なら自明に PASS）
        grid: 平行移動と評価点をとる格子
        seed: 乱数の種（省略時は設定値）
        scale_fn: 検証する拡大の実装（省略時は measure.scale）
        translate_fn: 検証する平行移動の実装（省略時は measure.translate）

    Returns:
        OracleReport: 検証結果
    """
    scale_fn = scale_fn or scale
    translate_fn = translate_fn or translate
    rng = random.Random(get_settings().seed if seed is None else seed)
    points = integral_points(field, grid) if samples else []
    candidates: list[Witness] = []
    checked = 0
    undecided = 0

    for i in range(samples):
        g = _random_function(rng, field, points)
        h = _random_function(rng, field, points)
        a = rng.choice(points)
        alpha = _random_scalar(rng, field)
        c = rng.randint(-3, 3)
        label = f"sample {i}"
        base = integral_F(g)

        if integral_F(translate_fn(g, a)) != base:
            candidates.append(Witness("translation", label, f"a = {a}"))
        if integral_F(scale_fn(g, alpha)) != base / abs_value_ratfunc(alpha):
            candidates.append(Witness("scaling", label, f"alpha = {alpha}"))
        if integral_F(g + h * c) != base + integral_F(h) * c:
            candidates.append(Witness("linearity", label, f"c = {c}"))
        checked += 3

        for x in rng.sample(points, min(3, len(points))):
            try:
                if evaluate(translate_fn(g, a), x) != evaluate(g, x - a):
                    candidates.append(Witness("translation_pointwise", str(x), label))
                if evaluate(scale_fn(g, alpha), x) != evaluate(g, alpha * x):
                    candidates.append(Witness("scaling_pointwise", str(x), label))
                checked += 2
            except InsufficientPrecision:
                undecided += 1

    notes = ()
    if undecided:
        notes = (f"{undecided} pointwise checks undecided at working precision",)
    status = OracleStatus.FAIL if candidates else OracleStatus.PASS
    logger.info(f"verify_integral_laws({field}, samples={samples}) -> {status.value}")
    return OracleReport(
        "verify-laws",
        status,
        checked,
        minimal_witnesses(candidates),
        {"samples": str(samples), "grid": str(grid)},
        notes,
    )
