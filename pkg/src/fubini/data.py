"""予想データと深さ正規化モジュール。

データ (a1, a2, n1, n2, h, f) から Φ(x, y) = f^0(x, y - t^R q(x)) への
帰着を行う。x = a1 + t^{n1}x'、y = a2 + h(a1) + t^{n2}y' と置くと
dx dy = X^{n1+n2} dx' dy' となり、R = (h の正規化の指数) - n2 となる。
"""

from dataclasses import dataclass

from src.errors import InvalidInput
from src.logging.logger import get_logger
from src.measure import RatFunc, SBFunction2
from src.polyarith import Poly, taylor_normalize
from src.tower import Level, TwoElement

logger = get_logger(__name__)


@dataclass(frozen=True)
class ConjectureData:
    """f^{(a1,a2),(n1,n2)}(x, y - h(x)) を定めるデータ。"""

    a1: TwoElement
    a2: TwoElement
    n1: int
    n2: int
    h: Poly
    f: SBFunction2

    def __post_init__(self) -> None:
        if self.h.level != Level.F:
            raise InvalidInput("h must be a polynomial over F")
        if self.h.is_zero:
            raise InvalidInput("h must be nonzero")

    @property
    def exponent(self) -> int:
        return self.n1 + self.n2


@dataclass(frozen=True)
class DepthNormalization:
    """深さ R と正規化多項式 q。

    h(a1 + t^{n1}X) = offset + t^{R+n2}·q(X) が成り立つ。
    """

    R: int
    q: Poly
    offset: TwoElement
    exponent: int

    def __str__(self) -> str:
        return f"R={self.R}, q={self.q}"


def normalize(data: ConjectureData) -> DepthNormalization:
    """データを深さと正規化多項式に帰着する。

    Args:
        data: h が定数でない予想データ

    Returns:
        DepthNormalization: (R, q) と平行移動・拡大の情報
    """
    if data.h.is_constant:
        raise InvalidInput("constant h is the translation case and has no depth")
    norm = taylor_normalize(data.h, data.a1, data.n1)
    R = norm.R - data.n2
    logger.debug(f"normalize: h={data.h} -> R={R}, q={norm.normalized}")
    return DepthNormalization(R, norm.normalized, norm.constant, data.exponent)


def dydx_integral(f: SBFunction2, R: int, q: Poly) -> RatFunc:
    """∫∫Φ(x, y) dy dx。

    内側の y 積分は平行移動不変性により t^R q(x) に依らないので、
    R と q に関係なく ∫∫f に等しい。
    """
    value = RatFunc.constant(f.haar_integral())
    logger.debug(f"dydx_integral(R={R}, q={q}) = {value}")
    return value
