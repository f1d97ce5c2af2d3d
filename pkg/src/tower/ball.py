"""K 上の超距離球モジュール。"""

from dataclasses import dataclass
from fractions import Fraction

from src.errors import InsufficientPrecision
from src.tower.field import FieldTowerSpec
from src.tower.mid import MidElement
from src.tower.valuation import AtLeast


@dataclass(frozen=True)
class Ball:
    """球 c + π_K^r·O_K。radius が None のときは一点 {c}。"""

    center: MidElement
    radius: int | None

    def __post_init__(self) -> None:
        if self.radius is not None:
            object.__setattr__(self, "center", self.center.reduced(self.radius))

    @classmethod
    def point(cls, center: MidElement) -> "Ball":
        return cls(center, None)

    @property
    def field(self) -> FieldTowerSpec:
        return self.center.field

    @property
    def is_point(self) -> bool:
        return self.radius is None

    def volume(self) -> Fraction:
        """ハール測度（μ(O_K) = 1）。一点は測度零。"""
        if self.radius is None:
            return Fraction(0)
        return Fraction(self.field.q) ** (-self.radius)

    def contains(self, x: MidElement) -> bool:
        v = (x - self.center).valuation()
        if self.radius is None:
            if isinstance(v, AtLeast):
                if v.is_exact_zero:
                    return True
                message = f"cannot decide {x} == {self.center}"
                raise InsufficientPrecision(message=message)
            return False
        if v.at_least(self.radius):
            return True
        if v.below(self.radius):
            return False
        raise InsufficientPrecision(required=self.radius)

    def contains_ball(self, other: "Ball") -> bool:
        if other.radius is None:
            return self.contains(other.center)
        if self.radius is None:
            return False
        return other.radius >= self.radius and self.contains(other.center)

    def intersects(self, other: "Ball") -> bool:
        if self.radius is None:
            return other.contains(self.center)
        if other.radius is None or other.radius >= self.radius:
            return self.contains(other.center)
        return other.contains(self.center)

    def children(self) -> list["Ball"]:
        """半径を一つ深くした q_K 個の子球。"""
        assert self.radius is not None
        field = self.field
        step = field.pi(self.radius)
        return [
            Ball(self.center + field.digit(d) * step, self.radius + 1)
            for d in field.residue.elements()
        ]

    def translated(self, a: MidElement) -> "Ball":
        return Ball(self.center + a, self.radius)

    def negated(self) -> "Ball":
        return Ball(-self.center, self.radius)

    def __str__(self) -> str:
        if self.radius is None:
            return f"{{{self.center}}}"
        pi = "u" if not self.field.is_padic else str(self.field.p)
        return f"{self.center} + {pi}^{self.radius}*O_K"
