"""拡張された零測度規約モジュール（非厳密、明示的に有効化した場合のみ）。

K の持ち上げられた写しの全質量を 0 とみなす規約のもとで、
発散する特異部分の切断面に値 0 を割り当てる。
"""

from src.errors import PatternNotRecognized
from src.fubini.sections import SectionFunction
from src.logging.logger import get_logger
from src.measure import RatFunc

logger = get_logger(__name__)


def extended_null_convention(witness: SectionFunction) -> RatFunc:
    """凍結した成分だけからなる証拠の拡張積分（常に 0）を返す。

    Args:
        witness: NOT_INTEGRABLE の判定に付いた特異部分の切断面

    Returns:
        RatFunc: 規約による積分値
    """
    if not witness.components or not all(c.frozen for c in witness.components):
        raise PatternNotRecognized(
            f"witness {witness} is not a sum of frozen fibre/level components"
        )
    logger.warning(
        f"extended null convention applied to {len(witness)} components (non-rigorous)"
    )
    return RatFunc.zero()
