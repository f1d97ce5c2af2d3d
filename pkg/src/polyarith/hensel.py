"""ヘンゼル持ち上げモジュール。"""

from src.config.settings import get_settings
from src.errors import InsufficientPrecision, InvalidInput, NotSimpleRoot
from src.logging.logger import get_logger
from src.polyarith.poly import Poly
from src.tower import Level, MidElement, TwoElement, working_precision

logger = get_logger(__name__)


def hensel_lift(
    q: Poly,
    omega: MidElement,
    b: TwoElement,
    N: int,
    mid_precision: int | None = None,
) -> TwoElement:
    """剰余の単根 ω を q(a) ≡ b (mod t^N) を満たす a に持ち上げる。

    Args:
        q: F[X] の整係数多項式
        omega: q̄(ω) = b̄ を満たす K の元
        b: 整な目標値
        N: 求める t 進精度
        mid_precision: K 係数の逆元に用いる精度（省略時は設定値）

    Returns:
        TwoElement: 精度 N の a（residue(a) = ω）
    """
    if q.level != Level.F:
        raise InvalidInput("hensel_lift expects a polynomial over F")
    if mid_precision is None:
        mid_precision = get_settings().mid_precision

    qbar = q.reduce()
    dq = q.derivative()
    slope = qbar.derivative().evaluate(omega)
    if not slope.provably_nonzero():
        raise NotSimpleRoot(f"{omega} is not a simple root of {qbar}")
    if (qbar.evaluate(omega) - b.residue()).provably_nonzero():
        raise InvalidInput(f"{omega} is not a residue root of {qbar} = {b.residue()}")

    a = q.field.two(omega)
    with working_precision(mid_precision):
        # 二次収束なので桁数の倍増回数に余裕をみる
        for _ in range(2 * max(N, 1).bit_length() + 4):
            r = (q.evaluate(a) - b).reduced(N) if N > 0 else q.field.two(0)
            if r.valuation().at_least(N):
                logger.debug(f"hensel_lift: {omega} -> {a} (N={N})")
                return a.truncate(N)
            step = r * dq.evaluate(a).inv(precision=N, mid_precision=mid_precision)
            a = (a - step.reduced(N)).reduced(N)
    message = f"Newton iteration did not reach t^{N}"
    raise InsufficientPrecision(required=N, message=message)
