"""特異な目標値の列挙モジュール。"""

from src.errors import InvalidInput, PurelyInseparable
from src.polyarith import Poly, is_purely_inseparable, roots_over_K
from src.tower import TwoElement


def singular_targets(q: Poly, A: int, precision: int | None = None) -> list[TwoElement]:
    """特異な逆像が空でない b の代表元（t^A を法として相異なる）を返す。

    剰余が q̄' の根 σ である x では q(x) ≡ q(σ̌) (mod t^2) なので、
    A ∈ {1, 2} では q(σ̌) を t^A で簡約したものが代表元になる。
    """
    if A not in (1, 2):
        raise InvalidInput(f"singular_targets supports A in {{1, 2}}, got {A}")
    qbar = q.reduce()
    if is_purely_inseparable(qbar):
        raise PurelyInseparable(f"derivative of {qbar} vanishes identically")
    targets: dict[str, TwoElement] = {}
    for root in roots_over_K(qbar.derivative(), precision):
        b = q.evaluate(q.field.two(root.value)).reduced(A)
        targets.setdefault(b.digit_key(), b)
    return [targets[k] for k in sorted(targets)]
