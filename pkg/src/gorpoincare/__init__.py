"""gorpoincare - Poincare series of compressed Gorenstein Artinian algebras."""

__version__ = "0.1.0"

from gorpoincare.core.errors import GorPoincareError
from gorpoincare.core.models import CheckRecord, RunConfig, VerificationReport
from gorpoincare.core.config import build_config
from gorpoincare.core.harness import (
    Harness,
    run_golod_powers_suite,
    run_main_theorem_suite,
    run_maps_suite,
    run_property_corpus,
    run_socle_quotient_suite,
)
from gorpoincare.algebra.compressed import is_compressed, sample_compressed_algebra

__all__ = [
    "GorPoincareError",
    "CheckRecord",
    "RunConfig",
    "VerificationReport",
    "build_config",
    "Harness",
    "run_main_theorem_suite",
    "run_golod_powers_suite",
    "run_socle_quotient_suite",
    "run_maps_suite",
    "run_property_corpus",
    "is_compressed",
    "sample_compressed_algebra",
]
