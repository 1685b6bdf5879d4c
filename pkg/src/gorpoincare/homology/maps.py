"""Chain-map lifting and the maps induced on Tor(-, k).

For minimal resolutions Tor_i(M, k) = F_i (x) k, so the map induced by a lift
is its constant-coefficient block at step i; different lifts give the same
block.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from gorpoincare.algebra.apolarity import (
    GradedArtinianAlgebra,
    annihilator,
    hypersurface_equation,
    power_ideal,
    socle,
    truncation,
    variables_ideal,
)
from gorpoincare.algebra.compressed import profile
from gorpoincare.algebra.linalg import matmul_mod, rank_mod, solve_mod
from gorpoincare.algebra.polyring import Form, GradedRing, PolynomialRing
from gorpoincare.core.errors import (
    CoordinateForm,
    InconsistentSystem,
    LiftFailure,
    TruncationOverflow,
)
from gorpoincare.homology.modules import (
    GradedModule,
    ModuleMap,
    from_algebra,
    identity_map,
    ideal_module,
    module_map,
)
from gorpoincare.homology.resolution import (
    FreeMap,
    GradedResolution,
    ResolutionStep,
    minimal_resolution,
)
from gorpoincare.utils.helpers import piece_dimension

logger = logging.getLogger(__name__)


@dataclass
class ChainMap:
    """Maps phi_i: F_i -> G_i lifting a module map."""

    source: GradedResolution
    target: GradedResolution
    maps: list[FreeMap]

    def tor(self, i: int) -> np.ndarray:
        """Matrix of Tor_i(M, k) -> Tor_i(M', k)."""
        if i < len(self.maps):
            return self.maps[i].constant_block()
        rows = self.target.steps[i].rank if i < len(self.target.steps) else 0
        cols = self.source.steps[i].rank if i < len(self.source.steps) else 0
        return np.zeros((rows, cols), dtype=np.int64)

    def tor_rank(self, i: int) -> int:
        return rank_mod(self.tor(i), self.source.ring.modulus)


def _check_degree(res: GradedResolution, i: int, degree: int) -> None:
    step = res.steps[i]
    if not step.complete and degree > step.cap:
        raise TruncationOverflow(
            f"step {i} of the target is only known through degree {step.cap}"
        )


def _solve(matrix: np.ndarray, rhs: np.ndarray, p: int, rng, context: str) -> np.ndarray:
    try:
        return solve_mod(matrix, rhs, p, rng)
    except InconsistentSystem as exc:
        raise LiftFailure(f"cannot lift {context}") from exc


def lift_chain_map(
    f: ModuleMap,
    res_a: GradedResolution,
    res_b: GradedResolution,
    seed: int | None = None,
) -> ChainMap:
    """Lift f: M -> M' to the resolutions, step by step, by solving linear systems.

    ``res_a`` may be any complex of free modules augmenting to M; ``res_b``
    must be a resolution of M'. With a seed, a random kernel element is added
    to every solution.

    Raises:
        LiftFailure: if some square cannot be completed
        TruncationOverflow: if step i or i-1 of the target is not known in a needed degree
    """
    p = res_b.ring.modulus
    rng = np.random.default_rng(seed) if seed is not None else None
    steps = min(res_a.length, res_b.length)
    maps: list[FreeMap] = []
    for i in range(steps + 1):
        source = res_a.free_module(i)
        target = res_b.free_module(i)
        lower = res_b.differential(i)
        images = []
        for a, image in zip(res_a.steps[i].degrees, res_a.steps[i].images):
            _check_degree(res_b, i, a)
            if i == 0:
                rhs = f.apply(image, a)
            else:
                _check_degree(res_b, i - 1, a)
                rhs = matmul_mod(maps[i - 1].matrix(a), image, p)
            images.append(_solve(lower.matrix(a), rhs, p, rng, f"step {i} in degree {a}"))
        maps.append(FreeMap(source, target, images))
        logger.debug("lifted step %d: %d generators", i, len(images))
    return ChainMap(res_a, res_b, maps)


def tor_induced_map(chain: ChainMap, i: int) -> np.ndarray:
    return chain.tor(i)


def base_change(res: GradedResolution, ring: GradedRing) -> GradedResolution:
    """F (x)_Q ring: the same generators with images reduced into ``ring``."""
    steps = []
    for step in res.steps:
        if step.index == 0:
            images = [v.copy() for v in step.images]
        else:
            free = res.free_module(step.index - 1)
            images = []
            for a, image in zip(step.degrees, step.images):
                parts = [
                    ring.reduce(image[block], a - b)
                    for b, block in zip(free.degrees, free.blocks(a))
                ]
                images.append(np.concatenate(parts) if parts else image[:0])
        steps.append(
            ResolutionStep(
                step.index, list(step.degrees), images, step.bound, step.cap, step.complete
            )
        )
    return GradedResolution(ring, res.module, steps, res.degree_cap, exact=False)


def base_change_chain(
    res_q: GradedResolution, res_p: GradedResolution, seed: int | None = None
) -> ChainMap:
    """Lift of the identity of M from F^Q (x) P to the P-resolution."""
    reduced = base_change(res_q, res_p.ring)
    return lift_chain_map(identity_map(res_p.module), reduced, res_p, seed)


def tor_base_change_map(
    res_q: GradedResolution, res_p: GradedResolution, i: int, seed: int | None = None
) -> np.ndarray:
    """phi_i: Tor_i^Q(M, k) -> Tor_i^P(M, k)."""
    return base_change_chain(res_q, res_p, seed).tor(i)


@dataclass
class TorMapRanks:
    """Ranks of an induced map on Tor_i together with the dimensions on both sides."""

    name: str
    ranks: dict[int, int] = field(default_factory=dict)
    source_dims: dict[int, int] = field(default_factory=dict)
    target_dims: dict[int, int] = field(default_factory=dict)

    def zero_for(self, indices) -> bool:
        return all(self.ranks.get(i, 0) == 0 for i in indices)

    def injective_at(self, i: int) -> bool:
        return self.ranks.get(i, 0) == self.source_dims.get(i, 0)

    def bijective_at(self, i: int) -> bool:
        return self.injective_at(i) and self.ranks.get(i, 0) == self.target_dims.get(i, 0)

    def kernel_dims(self) -> dict[int, int]:
        return {i: self.source_dims[i] - self.ranks[i] for i in sorted(self.ranks)}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ranks": [self.ranks[i] for i in sorted(self.ranks)],
            "source_betti": [self.source_dims[i] for i in sorted(self.source_dims)],
            "target_betti": [self.target_dims[i] for i in sorted(self.target_dims)],
        }


def chain_ranks(chain: ChainMap, indices, name: str) -> TorMapRanks:
    report = TorMapRanks(name)
    for i in indices:
        report.ranks[i] = chain.tor_rank(i)
        report.source_dims[i] = chain.source.steps[i].rank if i < len(chain.source.steps) else 0
        report.target_dims[i] = chain.target.steps[i].rank if i < len(chain.target.steps) else 0
    return report


def induced_ranks(
    ring: GradedRing,
    f: ModuleMap,
    steps: int,
    name: str,
    seed: int | None = None,
) -> TorMapRanks:
    """Resolve source and target of f over ``ring`` and report the ranks on Tor_0..Tor_steps."""
    res_a = minimal_resolution(ring, f.source, steps)
    res_b = minimal_resolution(ring, f.target, steps)
    chain = lift_chain_map(f, res_a, res_b, seed)
    return chain_ranks(chain, range(steps + 1), name)


def base_change_ranks(
    q: PolynomialRing,
    ring: GradedRing,
    module: GradedModule,
    steps: int,
    name: str,
    seed: int | None = None,
) -> TorMapRanks:
    """Ranks of phi_i^M: Tor_i^Q(M, k) -> Tor_i^P(M, k) for i <= steps."""
    res_q = minimal_resolution(q, module, steps)
    res_p = minimal_resolution(ring, module, steps)
    chain = base_change_chain(res_q, res_p, seed)
    return chain_ranks(chain, range(steps + 1), name)


def nu_ranks(
    q: PolynomialRing, R: GradedArtinianAlgebra, j: int, seed: int | None = None
) -> TorMapRanks:
    """Tor^Q_i(m^{j+1}, k) -> Tor^Q_i(m^j, k) induced by the inclusion."""
    smaller = ideal_module(R, power_ideal(R, j + 1), f"m^{j + 1}")
    larger = ideal_module(R, power_ideal(R, j), f"m^{j}")
    return induced_ranks(q, module_map(smaller, larger), R.e, f"nu(m^{j})", seed)


def rho_ranks(
    ring: GradedRing, R: GradedArtinianAlgebra, i: int, steps: int, seed: int | None = None
) -> TorMapRanks:
    """Tor_*(R/m^i, k) -> Tor_*(R/m^{i-1}, k) induced by the projection."""
    source = from_algebra(truncation(R, i), f"R/m^{i}")
    target = from_algebra(truncation(R, i - 1), f"R/m^{i - 1}")
    return induced_ranks(ring, module_map(source, target), steps, f"rho({ring.kind})", seed)


@dataclass
class GolodCriterionReport:
    """Ranks of the two families of maps in the Golod criterion for P -> R."""

    a: int
    projection: TorMapRanks
    inclusion: TorMapRanks
    inclusion_trivial: bool

    @property
    def condition_one(self) -> bool:
        return self.projection.zero_for(i for i in self.projection.ranks if i >= 1)

    @property
    def condition_two(self) -> bool:
        return self.inclusion.zero_for(self.inclusion.ranks)

    @property
    def ok(self) -> bool:
        return self.condition_one and self.condition_two

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "condition_one": self.condition_one,
            "condition_two": self.condition_two,
            "projection": self.projection.to_dict(),
            "inclusion": self.inclusion.to_dict(),
            "inclusion_trivial": self.inclusion_trivial,
        }


def golod_criterion_check(
    R: GradedArtinianAlgebra, ring: GradedRing, a: int, steps: int, seed: int | None = None
) -> GolodCriterionReport:
    """Vanishing of Tor^P(R) -> Tor^P(R/m^a) for i >= 1 and of Tor^P(m^{2a}) -> Tor^P(m^a)."""
    whole = from_algebra(R)
    quotient = from_algebra(truncation(R, a), f"R/m^{a}")
    projection = induced_ranks(ring, module_map(whole, quotient), steps, "projection", seed)
    squared = power_ideal(R, 2 * a)
    if squared.is_zero():
        zeros = {i: 0 for i in range(steps + 1)}
        inclusion = TorMapRanks("inclusion", dict(zeros), dict(zeros), dict(zeros))
        trivial = True
    else:
        smaller = ideal_module(R, squared, f"m^{2 * a}")
        larger = ideal_module(R, power_ideal(R, a), f"m^{a}")
        inclusion = induced_ranks(ring, module_map(smaller, larger), steps, "inclusion", seed)
        trivial = False
    return GolodCriterionReport(a, projection, inclusion, trivial)


def socle_inclusion_map_check(
    q: PolynomialRing, R: GradedArtinianAlgebra, seed: int | None = None
) -> TorMapRanks:
    """Tor^Q_i(Soc R, k) -> Tor^Q_i(R, k); zero below e and bijective at e for Gorenstein R."""
    soc = ideal_module(R, socle(R), "Soc R")
    return induced_ranks(q, module_map(soc, from_algebra(R)), R.e, "socle inclusion", seed)


@dataclass
class SocleFactorizationReport:
    """q = ann(x_2..x_e) against m^r, m^{r+1} and m^s = x_1^{t-1} q."""

    t: int
    r: int
    q_dims: tuple[int, ...]
    contained: bool
    not_deeper: bool
    factorization: bool

    @property
    def ok(self) -> bool:
        return self.contained and self.not_deeper and self.factorization

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "r": self.r,
            "q_dims": list(self.q_dims),
            "contained": self.contained,
            "not_deeper": self.not_deeper,
            "factorization": self.factorization,
        }


def socle_factorization_check(R: GradedArtinianAlgebra, h: Form) -> SocleFactorizationReport:
    """Check m^s = x_1^{t-1} ann(x_2..x_e) with q inside m^r but not m^{r+1}.

    Raises:
        CoordinateForm: if h is not x_1^t + C with C in (x_2..x_e)
    """
    if h.is_zero() or h.coeffs[0] != 1:
        raise CoordinateForm("h must read x_1^t + C with C in (x_2..x_e)")
    t = h.degree
    r = R.s + 1 - t
    q = annihilator(R, variables_ideal(R, list(range(1, R.e))))
    dims = q.dims()
    contained = all(dims[d] == 0 for d in range(min(r, len(dims))))
    not_deeper = r < len(dims) and dims[r] > 0
    factorization = False
    if not_deeper:
        power = np.zeros(piece_dimension(R.e, t - 1), dtype=np.int64)
        power[0] = 1
        x1 = R.reduce(power, t - 1)
        images = matmul_mod(q.piece(r), R.element_matrix(x1, t - 1, r).T, R.modulus)
        factorization = rank_mod(images, R.modulus) == R.dim(R.s)
    return SocleFactorizationReport(t, r, dims, contained, not_deeper, factorization)


def socle_factorization_for(R: GradedArtinianAlgebra) -> SocleFactorizationReport:
    """Run the factorization check with h read off I_t in the current coordinates."""
    t = profile(max(R.effective_e, 1), R.s).t
    return socle_factorization_check(R, hypersurface_equation(R, t))
