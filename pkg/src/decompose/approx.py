"""剰余体近似モジュール。

h(a + t^c x) ∈ b + t^A·O_F のとき、(h(a + t^c x) - b)·t^{-A} の剰余は
x の剰余の多項式 ψ で書ける。
"""

from dataclasses import dataclass

from src.decompose.ideal import TranslatedIdeal
from src.errors import InsufficientPrecision, NotContained
from src.polyarith import Poly, taylor_normalize
from src.tower import Level


@dataclass(frozen=True)
class ResidueApprox:
    """ψ と、それを定める始域・終域のイデアル。"""

    psi: Poly
    src: TranslatedIdeal
    dst: TranslatedIdeal

    @property
    def a(self):
        return self.src.center

    @property
    def b(self):
        return self.dst.center


def residue_approximation(
    h: Poly, src: TranslatedIdeal, dst: TranslatedIdeal
) -> ResidueApprox:
    """h(src) ⊆ dst のときの剰余体近似 ψ を求める。

    Args:
        h: F[X] の非定数多項式
        src: 始域 a + t^c·O_F
        dst: 終域 b + t^A·O_F

    Returns:
        ResidueApprox: 標準代表元 a, b に対する ψ
    """
    norm = taylor_normalize(h, src.center, src.exponent)
    A = dst.exponent
    diff = norm.constant - dst.center
    v = diff.valuation()
    if v.below(A) or norm.R < A:
        raise NotContained(f"{h} maps {src} outside {dst}")
    if not v.at_least(A):
        raise InsufficientPrecision(required=A)
    offset = diff.shift(-A).residue()
    field = h.field
    if norm.R == A:
        psi = norm.normalized.reduce() + Poly.constant(field, Level.K, offset)
    else:
        psi = Poly.constant(field, Level.K, offset)
    return ResidueApprox(psi, src, dst)
