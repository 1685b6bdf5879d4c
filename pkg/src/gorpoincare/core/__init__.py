"""Core module: errors, run configuration and report models.

The harness and report modules build on the algebra and homology layers and
are imported from their own modules.
"""

from gorpoincare.core.errors import GorPoincareError
from gorpoincare.core.models import CheckRecord, RunConfig, VerificationReport
from gorpoincare.core.config import build_config, load_anchors, load_defaults

__all__ = [
    "GorPoincareError",
    "CheckRecord",
    "RunConfig",
    "VerificationReport",
    "build_config",
    "load_anchors",
    "load_defaults",
]
