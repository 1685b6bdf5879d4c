"""Compressedness: the bound eps, the pair (t, r) and the equivalent criteria.

A Gorenstein Artinian algebra of embedding dimension e and socle degree s has
h_R(i) <= eps_i = min(binom(e-1+s-i, e-1), binom(e-1+i, e-1)); it is
compressed when equality holds everywhere.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

import numpy as np

from gorpoincare.algebra.apolarity import (
    GradedArtinianAlgebra,
    annihilator,
    build_algebra,
    power_ideal,
    sample_dual_generator,
    socle,
)
from gorpoincare.algebra.linalg import rank_mod
from gorpoincare.core.errors import (
    GenericSamplingFailed,
    NotGorenstein,
    RouteDisagreement,
    ZeroGenerator,
)
from gorpoincare.utils.helpers import derive_seed, piece_dimension

logger = logging.getLogger(__name__)


def eps(e: int, s: int) -> tuple[int, ...]:
    """eps_i = min(binom(e-1+s-i, e-1), binom(e-1+i, e-1)) for 0 <= i <= s."""
    if e < 1 or s < 0:
        raise ValueError("need e >= 1 and s >= 0")
    return tuple(min(comb(e - 1 + s - i, e - 1), comb(e - 1 + i, e - 1)) for i in range(s + 1))


@dataclass(frozen=True)
class CompressedProfile:
    """Numerical data attached to (e, s)."""

    e: int
    s: int
    t: int
    r: int
    eps: tuple[int, ...]
    lambda_max: int
    in_theorem: bool

    @property
    def even(self) -> bool:
        return self.s % 2 == 0


def profile(e: int, s: int) -> CompressedProfile:
    """Build the profile; ``in_theorem`` holds for s >= 2, s != 3 and e > 1."""
    if e < 1 or s < 1:
        raise ValueError("need e >= 1 and s >= 1")
    t = (s + 2) // 2
    values = eps(e, s)
    return CompressedProfile(
        e=e,
        s=s,
        t=t,
        r=s + 1 - t,
        eps=values,
        lambda_max=sum(values),
        in_theorem=s >= 2 and s != 3 and e > 1,
    )


def v_invariant(R: GradedArtinianAlgebra) -> int:
    """Initial degree of the defining ideal in the effective presentation."""
    e = R.effective_e
    for d in range(R.s + 2):
        if R.dim(d) < piece_dimension(e, d):
            return d
    return R.s + 1


def socle_rank(R: GradedArtinianAlgebra) -> int:
    return sum(socle(R).dims())


@dataclass
class CompressednessReport:
    """Outcome of the three equivalent compressedness criteria."""

    length_route: bool
    hilbert_route: bool
    annihilator_route: bool
    declared_e: int
    effective_e: int
    hilbert_function: tuple[int, ...]
    length: int
    lambda_max: int

    @property
    def compressed(self) -> bool:
        return self.length_route

    def to_dict(self) -> dict:
        return {
            "length_route": self.length_route,
            "hilbert_route": self.hilbert_route,
            "annihilator_route": self.annihilator_route,
            "declared_e": self.declared_e,
            "effective_e": self.effective_e,
            "hilbert_function": list(self.hilbert_function),
            "length": self.length,
            "lambda_max": self.lambda_max,
        }


def is_compressed(R: GradedArtinianAlgebra) -> CompressednessReport:
    """Decide compressedness by length, by Hilbert function and by annihilators.

    Raises:
        NotGorenstein: if the socle does not have rank 1
        RouteDisagreement: if the three criteria disagree
    """
    rank = socle_rank(R)
    if rank != 1:
        raise NotGorenstein(f"socle has rank {rank}")
    e = R.effective_e
    prof = profile(max(e, 1), R.s)
    hilbert = R.hilbert_function()
    length_route = R.length == prof.lambda_max
    hilbert_route = hilbert == prof.eps
    annihilator_route = v_invariant(R) >= prof.t and annihilator(
        R, power_ideal(R, prof.t)
    ) == power_ideal(R, R.s + 1 - prof.t)
    if not length_route == hilbert_route == annihilator_route:
        raise RouteDisagreement(
            f"length={length_route} hilbert={hilbert_route} annihilator={annihilator_route}"
            f" for h={hilbert}"
        )
    return CompressednessReport(
        length_route=length_route,
        hilbert_route=hilbert_route,
        annihilator_route=annihilator_route,
        declared_e=R.e,
        effective_e=e,
        hilbert_function=hilbert,
        length=R.length,
        lambda_max=prof.lambda_max,
    )


def pairing_ranks(R: GradedArtinianAlgebra) -> dict[int, tuple[int, int]]:
    """Rank of R_i x R_{s-i} -> R_s against dim R_i, for each i."""
    out = {}
    for i in range(R.s + 1):
        rows = []
        for u in np.eye(R.dim(i), dtype=np.int64):
            rows.append(R.element_matrix(u, i, R.s - i).reshape(-1))
        matrix = np.vstack(rows) if rows else np.zeros((0, 0), dtype=np.int64)
        out[i] = (rank_mod(matrix, R.modulus), R.dim(i))
    return out


@dataclass
class ConsequencesReport:
    """Consequences of compressedness, one entry per claim."""

    v: int
    t: int
    annihilator_chain: dict[int, bool] = field(default_factory=dict)
    socle_dims: tuple[int, ...] = ()
    lower_half_bounded: bool = True
    length_bounded: bool = True
    pairing_perfect: bool = True

    @property
    def v_equals_t(self) -> bool:
        return self.v == self.t

    @property
    def associated_graded_gorenstein(self) -> bool:
        return sum(self.socle_dims) == 1 and self.socle_dims[-1] == 1

    @property
    def ok(self) -> bool:
        return (
            self.v_equals_t
            and all(self.annihilator_chain.values())
            and self.associated_graded_gorenstein
            and self.lower_half_bounded
            and self.length_bounded
            and self.pairing_perfect
        )

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "t": self.t,
            "annihilator_chain": {str(i): ok for i, ok in self.annihilator_chain.items()},
            "socle_dims": list(self.socle_dims),
            "lower_half_bounded": self.lower_half_bounded,
            "length_bounded": self.length_bounded,
            "pairing_perfect": self.pairing_perfect,
        }


def consequences_check(R: GradedArtinianAlgebra) -> ConsequencesReport:
    """Check v(R) = t, ann(m^i) = m^(s+1-i) for all i, and that gr R is Gorenstein.

    Failures are recorded in the report, never raised.
    """
    prof = profile(max(R.effective_e, 1), R.s)
    chain = {
        i: annihilator(R, power_ideal(R, i)) == power_ideal(R, R.s + 1 - i)
        for i in range(R.s + 2)
    }
    hilbert = R.hilbert_function()
    return ConsequencesReport(
        v=v_invariant(R),
        t=prof.t,
        annihilator_chain=chain,
        socle_dims=socle(R).dims(),
        lower_half_bounded=all(hilbert[i] <= prof.eps[i] for i in range(prof.t)),
        length_bounded=R.length <= prof.lambda_max,
        pairing_perfect=all(r == n for r, n in pairing_ranks(R).values()),
    )


@dataclass
class SampledInstance:
    """A compressed algebra together with how it was found."""

    algebra: GradedArtinianAlgebra
    seed: int
    retries: int
    attempts: list[dict] = field(default_factory=list)


def sample_compressed_algebra(
    e: int, s: int, p: int, seed: int, max_retries: int = 32
) -> SampledInstance:
    """Sample dual generators from seed, seed + 1, ... until R is compressed.

    Raises:
        GenericSamplingFailed: after ``max_retries`` unsuccessful seeds
    """
    attempts: list[dict] = []
    for offset in range(max_retries):
        current = derive_seed(seed, offset)
        F = sample_dual_generator(e, s, p, current)
        try:
            R = build_algebra(F)
            verdict = is_compressed(R)
        except (ZeroGenerator, NotGorenstein) as exc:
            attempts.append({"seed": current, "reason": str(exc)})
            logger.warning("seed %d rejected: %s", current, exc)
            continue
        if verdict.compressed and verdict.effective_e == e:
            logger.info(
                "sampled compressed algebra e=%d s=%d p=%d seed=%d retries=%d",
                e, s, p, current, offset,
            )
            return SampledInstance(R, current, offset, attempts)
        attempts.append(
            {"seed": current, "reason": "not compressed", "hilbert": list(verdict.hilbert_function)}
        )
        logger.warning("seed %d gave h=%s, resampling", current, verdict.hilbert_function)
    raise GenericSamplingFailed(
        f"no compressed algebra for e={e} s={s} after {max_retries} seeds", attempts
    )
