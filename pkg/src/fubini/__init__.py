"""fubini パッケージ。"""

from src.fubini.appendix import check_fiber_class, in_fiber_class, j_integral
from src.fubini.data import (
    ConjectureData,
    DepthNormalization,
    dydx_integral,
    normalize,
)
from src.fubini.extended import extended_null_convention
from src.fubini.sections import (
    ComponentKind,
    SectionComponent,
    SectionFunction,
    section_nonsingular,
    section_singular,
    section_singular_fn,
    step_section,
)
from src.fubini.tails import (
    GradedTerm,
    certify_divergence,
    dominance_threshold,
    shell_measure,
)
from src.fubini.verdict import FubiniVerdict, VerdictKind, check_conjecture, classify

__all__ = [
    "ComponentKind",
    "ConjectureData",
    "DepthNormalization",
    "FubiniVerdict",
    "GradedTerm",
    "SectionComponent",
    "SectionFunction",
    "VerdictKind",
    "certify_divergence",
    "check_conjecture",
    "check_fiber_class",
    "classify",
    "dominance_threshold",
    "dydx_integral",
    "extended_null_convention",
    "in_fiber_class",
    "j_integral",
    "normalize",
    "section_nonsingular",
    "section_singular",
    "section_singular_fn",
    "shell_measure",
    "step_section",
]
