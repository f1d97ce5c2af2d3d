"""オラクルの検証結果モジュール。"""

from dataclasses import dataclass, field
from enum import Enum

# 報告する証拠の最大数
MAX_WITNESSES = 5


class OracleStatus(str, Enum):
    """検証結果の種類。"""

    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Witness:
    """検証に失敗した点。

    Attributes:
        kind: 失敗の種類（completeness, disjointness, soundness, psi など）
        point: 失敗した点の表示
        detail: 補足
    """

    kind: str
    point: str
    detail: str = ""

    def __str__(self) -> str:
        suffix = f" ({self.detail})" if self.detail else ""
        return f"{self.kind} at {self.point}{suffix}"


@dataclass(frozen=True)
class OracleReport:
    """オラクルの検証結果。"""

    check: str
    status: OracleStatus
    checked: int
    witnesses: tuple[Witness, ...] = ()
    values: dict[str, str] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status == OracleStatus.PASS

    def __str__(self) -> str:
        lines = [f"{self.check}: {self.status.value} ({self.checked} checks)"]
        lines += [f"  {k} = {v}" for k, v in self.values.items()]
        lines += [f"  witness: {w}" for w in self.witnesses]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def minimal_witnesses(candidates: list[Witness]) -> tuple[Witness, ...]:
    """種類ごとに表示の短い証拠を優先して選ぶ。"""
    ordered = sorted(candidates, key=lambda w: (len(w.point), w.point))
    chosen: list[Witness] = []
    kinds: set[str] = set()
    for w in ordered:
        if w.kind not in kinds:
            chosen.append(w)
            kinds.add(w.kind)
    for w in ordered:
        if len(chosen) >= MAX_WITNESSES:
            break
        if w not in chosen:
            chosen.append(w)
    return tuple(chosen[:MAX_WITNESSES])
