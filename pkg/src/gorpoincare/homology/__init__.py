"""Graded modules, minimal free resolutions and maps on Tor."""

from gorpoincare.homology.modules import GradedModule, from_algebra, residue_field
from gorpoincare.homology.resolution import (
    BettiTable,
    GradedResolution,
    minimal_resolution,
    poincare_truncated,
)
from gorpoincare.homology.koszul import koszul_betti
from gorpoincare.homology.maps import ChainMap, lift_chain_map

__all__ = [
    "GradedModule",
    "from_algebra",
    "residue_field",
    "BettiTable",
    "GradedResolution",
    "minimal_resolution",
    "poincare_truncated",
    "koszul_betti",
    "ChainMap",
    "lift_chain_map",
]
