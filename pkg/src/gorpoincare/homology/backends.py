"""Ring backends for resolutions and their degree policies.

Three kinds of rings are resolved over: the polynomial ring Q itself, a
hypersurface P = Q/(h), and a finite-dimensional graded quotient of Q. All of
them are ``GradedRing`` instances; this module builds them and decides up to
which internal degree each resolution step has to be computed.
"""

from __future__ import annotations

import logging

from gorpoincare.algebra.apolarity import GradedArtinianAlgebra, first_ideal_form
from gorpoincare.algebra.compressed import profile
from gorpoincare.algebra.polyring import Form, GradedRing, HypersurfaceRing, PolynomialRing
from gorpoincare.homology.modules import GradedModule

logger = logging.getLogger(__name__)


def hypersurface_for(R: GradedArtinianAlgebra, h: Form | None = None) -> HypersurfaceRing:
    """P = Q/(h) with h of degree t in the defining ideal of R.

    Without an explicit h, the first element of the reduced basis of I_t is used.
    """
    if h is None:
        t = profile(max(R.effective_e, 1), R.s).t
        h = first_ideal_form(R, t)
    logger.debug("hypersurface backend with h of degree %d", h.degree)
    return HypersurfaceRing(h)


def step_bound(
    ring: GradedRing, module: GradedModule, i: int, previous_top: int | None
) -> int | None:
    """Largest internal degree a step-i generator can have.

    Args:
        ring: Backend the resolution lives over
        module: Module being resolved
        i: Homological step
        previous_top: Largest generator degree of step i-1, when that step is complete

    Returns:
        The bound, or None when no bound is known
    """
    top = module.top
    if top is None:
        return None
    if i == 0:
        return top
    if isinstance(ring, PolynomialRing):
        return top + i
    if isinstance(ring, HypersurfaceRing):
        return top + i + (i // 2) * max(ring.t - 2, 0)
    ring_top = ring.top_degree
    if ring_top is None or previous_top is None:
        return None
    return previous_top + max(ring_top, 1)


def default_degree_cap(ring: GradedRing, module: GradedModule, n: int) -> int:
    """Default internal degree truncation D for a resolution to step n."""
    top = module.top or 0
    if isinstance(ring, PolynomialRing):
        return top + n
    if isinstance(ring, HypersurfaceRing):
        return n * (top + ring.t) + top
    return n * max(ring.top_degree or 1, 1) + top
