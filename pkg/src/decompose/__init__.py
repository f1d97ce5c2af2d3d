"""decompose パッケージ。"""

from src.decompose.approx import ResidueApprox, residue_approximation
from src.decompose.balls import bounding_radius, preimage_measure, taylor_at
from src.decompose.ideal import TranslatedIdeal, membership
from src.decompose.preimage import Decomposition, Piece, decompose_preimage
from src.decompose.targets import singular_targets

__all__ = [
    "Decomposition",
    "Piece",
    "ResidueApprox",
    "TranslatedIdeal",
    "bounding_radius",
    "decompose_preimage",
    "membership",
    "preimage_measure",
    "residue_approximation",
    "singular_targets",
    "taylor_at",
]
