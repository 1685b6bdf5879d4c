"""Degree-truncated minimal graded free resolutions.

A free module is a list of generator degrees over a ``GradedRing``; its
degree-d piece is the direct sum of ring_{d - a_g}. Differentials are stored
by the images of generators, and their matrices are assembled on demand from
the multiplication tensors of the ring.

Each step is computed degree by degree up to a cap: the kernel K_d of the
previous differential, the subspace (x_1..x_e) K_{d-1} inside it, and the
earliest completion of the latter to K_d, which gives the new generators.
Everything at or below the cap is exact; a step is ``complete`` when the
cap reaches a proven bound for its generator degrees.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
import pandas as pd

from gorpoincare.algebra.linalg import extend_basis_mod, kernel_mod, matmul_mod
from gorpoincare.algebra.polyring import GradedRing
from gorpoincare.core.errors import TruncationOverflow
from gorpoincare.homology.backends import default_degree_cap, step_bound
from gorpoincare.homology.modules import GradedModule, check_module
from gorpoincare.series.arithmetic import TruncatedIntegerSeries

logger = logging.getLogger(__name__)


class FreeModule:
    """Graded free module over ``ring`` with generators in the given degrees."""

    def __init__(self, ring: GradedRing, degrees: list[int]):
        self.ring = ring
        self.degrees = list(degrees)
        self._actions: dict[tuple[int, int], np.ndarray] = {}

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def e(self) -> int:
        return self.ring.e

    def dim(self, d: int) -> int:
        return sum(self.ring.dim(d - a) for a in self.degrees)

    def blocks(self, d: int) -> list[slice]:
        """Coordinate range of each generator inside the degree-d piece."""
        out = []
        start = 0
        for a in self.degrees:
            width = self.ring.dim(d - a)
            out.append(slice(start, start + width))
            start += width
        return out

    def action(self, j: int, d: int) -> np.ndarray:
        """Matrix of x_{j+1} from degree d to degree d+1, block diagonal."""
        key = (j, d)
        if key not in self._actions:
            matrix = np.zeros((self.dim(d + 1), self.dim(d)), dtype=np.int64)
            for a, rows, cols in zip(self.degrees, self.blocks(d + 1), self.blocks(d)):
                if cols.stop > cols.start and rows.stop > rows.start:
                    matrix[rows, cols] = self.ring.variable_action(j, d - a)
            self._actions[key] = matrix
        return self._actions[key]


Target = Union[FreeModule, GradedModule]


class FreeMap:
    """Map out of a free module, given by the images of its generators.

    ``images[g]`` is a vector in the degree ``source.degrees[g]`` piece of the
    target. The target is either another free module over the same ring or a
    graded module (an augmentation).
    """

    def __init__(self, source: FreeModule, target: Target, images: list[np.ndarray]):
        if len(images) != source.rank:
            raise ValueError("one image per generator is required")
        self.source = source
        self.target = target
        self.images = [np.asarray(v, dtype=np.int64) for v in images]
        self._matrices: dict[int, np.ndarray] = {}

    @property
    def ring(self) -> GradedRing:
        return self.source.ring

    def _target_dim(self, d: int) -> int:
        return self.target.dim(d)

    def matrix(self, d: int) -> np.ndarray:
        """Matrix of the map on the degree-d pieces."""
        if d in self._matrices:
            return self._matrices[d]
        ring = self.ring
        p = ring.modulus
        out = np.zeros((self._target_dim(d), self.source.dim(d)), dtype=np.int64)
        for a, cols, image in zip(self.source.degrees, self.source.blocks(d), self.images):
            k = d - a
            if cols.stop == cols.start or out.shape[0] == 0:
                continue
            if isinstance(self.target, FreeModule):
                target_blocks = self.target.blocks(a)
                for b, rows_a, rows_d in zip(
                    self.target.degrees, target_blocks, self.target.blocks(d)
                ):
                    coeff = image[rows_a]
                    if rows_d.stop == rows_d.start or not np.any(coeff):
                        continue
                    out[rows_d, cols] = ring.element_matrix(coeff, a - b, k)
            else:
                stack = self.target.ring_action(ring, k, a)
                out[:, cols] = np.mod(stack @ image, p).T
        self._matrices[d] = out
        return out

    def constant_block(self) -> np.ndarray:
        """Coefficients of degree zero: the map reduced modulo the irrelevant ideal."""
        if not isinstance(self.target, FreeModule):
            raise TypeError("constant blocks are defined between free modules")
        out = np.zeros((self.target.rank, self.source.rank), dtype=np.int64)
        for g, (a, image) in enumerate(zip(self.source.degrees, self.images)):
            for h, (b, block) in enumerate(zip(self.target.degrees, self.target.blocks(a))):
                if a == b and block.stop > block.start:
                    out[h, g] = image[block][0]
        return out


@dataclass
class ResolutionStep:
    """Generators of one free module and the images of its generators."""

    index: int
    degrees: list[int]
    images: list[np.ndarray]
    bound: int | None
    cap: int
    complete: bool

    @property
    def rank(self) -> int:
        return len(self.degrees)


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} with a completeness flag per step."""

    entries: dict[tuple[int, int], int]
    complete: list[bool]
    steps: int
    degree_cap: int
    terminated: bool = False

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.steps + 1)]

    def row(self, i: int) -> dict[int, int]:
        return {j: b for (k, j), b in sorted(self.entries.items()) if k == i}

    def poincare(self, order: int | None = None) -> TruncatedIntegerSeries:
        """Sum_i beta_i z^i through z^order.

        Raises:
            TruncationOverflow: if a needed step may be missing generators
        """
        order = self.steps if order is None else order
        if order > self.steps and not self.terminated:
            raise TruncationOverflow(f"only {self.steps} steps were computed")
        for i in range(min(order, self.steps) + 1):
            if not self.complete[i]:
                raise TruncationOverflow(f"step {i} may have generators above degree cap")
        coeffs = [self.total(i) if i <= self.steps else 0 for i in range(order + 1)]
        return TruncatedIntegerSeries.from_coeffs(coeffs, order)

    def to_frame(self) -> pd.DataFrame:
        rows = [{"i": i, "j": j, "beta": b} for (i, j), b in sorted(self.entries.items()) if b]
        return pd.DataFrame(rows, columns=["i", "j", "beta"])

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False)

    def to_dict(self) -> dict:
        return {
            "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items()) if b],
            "totals": self.totals(),
            "complete": list(self.complete),
            "steps": self.steps,
            "degree_cap": self.degree_cap,
            "terminated": self.terminated,
        }

    def without(self, i: int, j: int) -> "BettiTable":
        """Copy with one degree-j generator of step i removed."""
        entries = dict(self.entries)
        if entries.get((i, j), 0) == 0:
            raise KeyError(f"no generator at ({i}, {j})")
        entries[(i, j)] -= 1
        return BettiTable(
            entries, list(self.complete), self.steps, self.degree_cap, self.terminated
        )


@dataclass
class GradedResolution:
    """Free modules F_0..F_N over ``ring`` resolving ``module`` through degree D."""

    ring: GradedRing
    module: GradedModule
    steps: list[ResolutionStep]
    degree_cap: int
    exact: bool = True
    _free: dict[int, FreeModule] = field(default_factory=dict, repr=False)
    _maps: dict[int, FreeMap] = field(default_factory=dict, repr=False)

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @property
    def terminated(self) -> bool:
        last = self.steps[-1]
        return last.complete and last.rank == 0

    def free_module(self, i: int) -> FreeModule:
        if i not in self._free:
            self._free[i] = FreeModule(self.ring, self.steps[i].degrees)
        return self._free[i]

    def differential(self, i: int) -> FreeMap:
        """d_i: F_i -> F_{i-1}; for i = 0 the augmentation F_0 -> M."""
        if i not in self._maps:
            target = self.module if i == 0 else self.free_module(i - 1)
            self._maps[i] = FreeMap(self.free_module(i), target, self.steps[i].images)
        return self._maps[i]

    @property
    def augmentation(self) -> FreeMap:
        return self.differential(0)

    def betti_table(self) -> BettiTable:
        entries: Counter = Counter()
        for step in self.steps:
            for a in step.degrees:
                entries[(step.index, a)] += 1
        return BettiTable(
            dict(entries),
            [step.complete for step in self.steps],
            self.length,
            self.degree_cap,
            self.terminated,
        )

    def poincare(self, order: int | None = None) -> TruncatedIntegerSeries:
        return self.betti_table().poincare(order)


def _minimal_generators(
    source: FreeModule | GradedModule,
    kernel: Callable[[int], np.ndarray],
    low: int,
    cap: int,
    p: int,
) -> tuple[list[int], list[np.ndarray]]:
    degrees: list[int] = []
    images: list[np.ndarray] = []
    previous = None
    for d in range(low, cap + 1):
        current = kernel(d)
        if current.shape[0] == 0:
            previous = current
            continue
        blocks = []
        if previous is not None and previous.shape[0]:
            for j in range(source.e):
                blocks.append(matmul_mod(previous, source.action(j, d - 1).T, p))
        span = np.vstack(blocks) if blocks else np.zeros((0, current.shape[1]), dtype=np.int64)
        chosen = extend_basis_mod(span, current, p)
        for index in chosen:
            degrees.append(d)
            images.append(current[index].copy())
        logger.debug("degree %d: kernel %d, new generators %d", d, current.shape[0], len(chosen))
        previous = current
    return degrees, images


def _kernel_of(differential: FreeMap) -> Callable[[int], np.ndarray]:
    source = differential.source
    p = differential.ring.modulus

    def kernel(d: int) -> np.ndarray:
        n = source.dim(d)
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        matrix = differential.matrix(d)
        if matrix.shape[0] == 0:
            return np.eye(n, dtype=np.int64)
        return kernel_mod(matrix, p)

    return kernel


def minimal_resolution(
    ring: GradedRing,
    module: GradedModule,
    steps: int,
    degree_cap: int | None = None,
    check: bool = True,
) -> GradedResolution:
    """Minimal graded free resolution of ``module`` over ``ring`` to step ``steps``.

    Args:
        ring: Polynomial, hypersurface or Artinian backend
        module: Finite-dimensional graded module annihilated by the ring's ideal
        steps: Homological truncation N
        degree_cap: Internal degree truncation D, defaulting to the backend policy
        check: Verify that the module is a module over the ring first

    Returns:
        The resolution; steps whose cap is below their proven bound carry
        ``complete = False`` and a warning is logged.

    Raises:
        IncompatibleModule: if the ring's defining ideal acts nontrivially
    """
    if steps < 0:
        raise ValueError("number of steps must be nonnegative")
    if check:
        check_module(ring, module)
    p = ring.modulus
    if degree_cap is None:
        degree_cap = default_degree_cap(ring, module, steps)
    if module.top is not None and degree_cap < module.top:
        raise ValueError(f"degree cap {degree_cap} is below the top degree {module.top}")
    result = GradedResolution(ring, module, [], degree_cap)
    if module.is_zero():
        result.steps.append(ResolutionStep(0, [], [], None, degree_cap, True))
        return result

    bound = step_bound(ring, module, 0, None)
    cap = min(degree_cap, bound)
    degrees, images = _minimal_generators(
        module, lambda d: np.eye(module.dim(d), dtype=np.int64), module.low, cap, p
    )
    complete = bound <= degree_cap
    result.steps.append(ResolutionStep(0, degrees, images, bound, cap, complete))
    logger.info("step 0: %d generators in degrees %s", len(degrees), sorted(set(degrees)))

    for i in range(1, steps + 1):
        previous = result.steps[-1]
        if previous.complete and previous.rank == 0:
            break
        source = result.free_module(i - 1)
        differential = result.differential(i - 1)
        previous_top = max(previous.degrees) if previous.complete and previous.degrees else None
        bound = step_bound(ring, module, i, previous_top)
        cap = degree_cap if bound is None else min(degree_cap, bound)
        low = min(previous.degrees) if previous.degrees else cap + 1

        degrees, images = _minimal_generators(
            source, _kernel_of(differential), low + 1, cap, p
        )
        complete = previous.complete and bound is not None and bound <= degree_cap
        result.steps.append(ResolutionStep(i, degrees, images, bound, cap, complete))
        logger.info(
            "step %d: %d generators in degrees %s%s",
            i,
            len(degrees),
            sorted(set(degrees)),
            "" if complete else " (possibly truncated)",
        )
        if not complete:
            logger.warning("step %d may have generators above degree %d", i, cap)
    return result


def resolution_audit(
    res: GradedResolution, module: GradedModule, table: BettiTable | None = None
) -> bool:
    """Compare sum_i (-1)^i HS(F_i) with HS(M) where the comparison is certified.

    The alternating sum is checked in every degree up to the degree cap when
    the resolution terminated, otherwise up to min(D, low(M) + N).
    """
    table = res.betti_table() if table is None else table
    if module.is_zero():
        return not any(table.entries.values())
    if table.terminated:
        limit = table.degree_cap
    else:
        limit = min(table.degree_cap, module.low + table.steps)
    for d in range(limit + 1):
        alternating = 0
        for (i, j), b in table.entries.items():
            alternating += (-1) ** i * b * res.ring.dim(d - j)
        if alternating != module.dim(d):
            logger.warning("audit mismatch in degree %d: %d != %d", d, alternating, module.dim(d))
            return False
    return True


def poincare_truncated(
    ring: GradedRing, module: GradedModule, steps: int, degree_cap: int | None = None
) -> TruncatedIntegerSeries:
    """Po_M(z) through z^steps from a minimal resolution.

    Raises:
        TruncationOverflow: if some step is not certified complete
    """
    res = minimal_resolution(ring, module, steps, degree_cap)
    return res.betti_table().poincare(steps)


def check_differentials(res: GradedResolution) -> bool:
    """d_{i-1} d_i = 0 in every computed degree (with d_0 the augmentation)."""
    p = res.ring.modulus
    for i in range(1, len(res.steps)):
        if res.steps[i].rank == 0:
            continue
        upper = res.differential(i)
        lower = res.differential(i - 1)
        for d in range(min(res.steps[i].degrees), res.steps[i].cap + 1):
            if upper.matrix(d).size == 0 or lower.matrix(d).size == 0:
                continue
            if np.any(matmul_mod(lower.matrix(d), upper.matrix(d), p)):
                logger.warning("d_%d d_%d != 0 in degree %d", i - 1, i, d)
                return False
    return True


def is_minimal(res: GradedResolution) -> bool:
    """Every differential entry lies in the irrelevant ideal."""
    for i in range(1, len(res.steps)):
        if res.steps[i].rank and np.any(res.differential(i).constant_block()):
            return False
    return True


def periodicity_window(table: BettiTable) -> int | None:
    """Smallest i0 with beta_i = beta_{i+2} for every computed i >= i0.

    At least two such equalities are required; None when no window exists.
    """
    totals = table.totals()
    n = len(totals)
    for i0 in range(n - 3):
        if all(totals[i] == totals[i + 2] for i in range(i0, n - 2)):
            return i0
    return None


@dataclass
class GradedModulePresentation:
    """Generators and relations of a module; relation columns hold ring elements."""

    ring: GradedRing
    generator_degrees: list[int]
    relation_degrees: list[int]
    relations: list[list[np.ndarray]]

    def entry(self, g: int, r: int) -> np.ndarray:
        """Coefficient of generator g in relation r, in ring_{deg r - deg g} coordinates."""
        return self.relations[r][g]

    def is_homogeneous(self) -> bool:
        for degree, column in zip(self.relation_degrees, self.relations):
            for a, coeff in zip(self.generator_degrees, column):
                if coeff.shape[0] != self.ring.dim(degree - a):
                    return False
        return True


def present(
    ring: GradedRing, module: GradedModule, degree_cap: int | None = None
) -> GradedModulePresentation:
    """Minimal presentation read off the first two steps of the minimal resolution."""
    res = minimal_resolution(ring, module, 1, degree_cap)
    generators = res.steps[0].degrees
    relations = []
    relation_degrees = []
    if len(res.steps) > 1:
        free = res.free_module(0)
        for degree, image in zip(res.steps[1].degrees, res.steps[1].images):
            relations.append([image[block].copy() for block in free.blocks(degree)])
            relation_degrees.append(degree)
    return GradedModulePresentation(ring, list(generators), relation_degrees, relations)
