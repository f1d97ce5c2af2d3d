"""テイラー正規化モジュール。"""

from dataclasses import dataclass

from src.errors import InsufficientPrecision, InvalidInput
from src.logging.logger import get_logger
from src.polyarith.poly import Poly
from src.tower import Level, TwoElement

logger = get_logger(__name__)


@dataclass(frozen=True)
class TaylorNormalization:
    """h(a + t^c X) = constant + t^R·normalized(X) の分解。

    normalized は整係数、定数項零、剰余は非零。
    """

    constant: TwoElement
    shift_exponent: int
    normalized: Poly

    @property
    def R(self) -> int:
        return self.shift_exponent


def taylor_normalize(h: Poly, a: TwoElement, c: int) -> TaylorNormalization:
    """h(a + t^c X) を定数と t^R 倍の正規化多項式に分ける。

    Args:
        h: F[X] の非定数多項式
        a: 平行移動の中心
        c: 拡大率の指数

    Returns:
        TaylorNormalization: (h(a), R, 正規化多項式)
    """
    if h.level != Level.F:
        raise InvalidInput("taylor_normalize expects a polynomial over F")
    if h.is_constant:
        raise InvalidInput(f"taylor_normalize needs a nonconstant polynomial, got {h}")
    composed = h.compose_linear(a, c)
    constant = composed.coefficient(0)
    rest = composed - Poly.constant(h.field, Level.F, constant)
    if rest.is_zero:
        raise InsufficientPrecision(
            message=f"nonconstant part of {h} at {a} vanishes to working precision"
        )
    shift = rest.min_valuation(1)
    assert shift is not None
    normalized = rest.shift_coefficients(-shift)
    logger.debug(f"taylor_normalize: h={h}, a={a}, c={c} -> R={shift}")
    return TaylorNormalization(constant, shift, normalized)


def reduce_poly(q: Poly) -> Poly:
    """整係数多項式を K[X] に落とす。"""
    return q.reduce()
