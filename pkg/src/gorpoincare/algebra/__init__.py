"""Finite-field linear algebra, graded rings and compressed Gorenstein algebras."""

from gorpoincare.algebra.linalg import DEFAULT_PRIME, kernel_mod, rank_mod, solve_mod
from gorpoincare.algebra.polyring import (
    DualElement,
    Form,
    GradedRing,
    HypersurfaceRing,
    PolynomialRing,
)
from gorpoincare.algebra.apolarity import (
    DualGenerator,
    GradedArtinianAlgebra,
    GradedIdeal,
    build_algebra,
    power_ideal,
    socle,
    socle_quotient,
    truncation,
)
from gorpoincare.algebra.compressed import (
    CompressedProfile,
    is_compressed,
    profile,
    sample_compressed_algebra,
)

__all__ = [
    "DEFAULT_PRIME",
    "kernel_mod",
    "rank_mod",
    "solve_mod",
    "DualElement",
    "Form",
    "GradedRing",
    "HypersurfaceRing",
    "PolynomialRing",
    "DualGenerator",
    "GradedArtinianAlgebra",
    "GradedIdeal",
    "build_algebra",
    "power_ideal",
    "socle",
    "socle_quotient",
    "truncation",
    "CompressedProfile",
    "is_compressed",
    "profile",
    "sample_compressed_algebra",
]
