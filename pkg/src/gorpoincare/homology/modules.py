"""Finite-dimensional graded modules over Q and maps between them.

A module is stored by the dimension of each graded piece and the matrices of
the variables x_1..x_e. Modules cut out of an Artinian algebra also remember
their basis inside the algebra, which is what lets ``module_map`` compute
inclusions and projections between them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from gorpoincare.algebra.apolarity import (
    GradedArtinianAlgebra,
    GradedIdeal,
    quotient_algebra,
)
from gorpoincare.algebra.linalg import matmul_mod
from gorpoincare.algebra.polyring import GradedRing, exponent_table, monomial_index
from gorpoincare.core.errors import IncompatibleModule

logger = logging.getLogger(__name__)


def _pivot_columns(rows: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in rows]


def coordinates_in(rows: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of ``vectors`` in the reduced echelon basis ``rows``.

    Raises:
        IncompatibleModule: if some vector is outside the span
    """
    vectors = np.asarray(vectors, dtype=np.int64) % p
    if rows.shape[0] == 0:
        if np.any(vectors):
            raise IncompatibleModule("vector outside a zero subspace")
        return np.zeros((vectors.shape[0], 0), dtype=np.int64)
    coords = vectors[:, _pivot_columns(rows)]
    if not np.array_equal(matmul_mod(coords, rows, p), vectors):
        raise IncompatibleModule("vector outside the target subspace")
    return coords


@dataclass(eq=False)
class GradedModule:
    """Graded vector space with an action of the variables of Q."""

    e: int
    modulus: int
    dims: dict[int, int]
    actions: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    name: str = "M"
    algebra: GradedArtinianAlgebra | None = None
    basis_rows: dict[int, np.ndarray] | None = None
    _monomial_cache: dict[tuple[int, int], np.ndarray] = field(
        default_factory=dict, repr=False
    )

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def degrees(self) -> list[int]:
        return sorted(d for d, n in self.dims.items() if n)

    @property
    def low(self) -> int | None:
        degrees = self.degrees()
        return degrees[0] if degrees else None

    @property
    def top(self) -> int | None:
        degrees = self.degrees()
        return degrees[-1] if degrees else None

    def is_zero(self) -> bool:
        return not self.degrees()

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def action(self, i: int, d: int) -> np.ndarray:
        """Matrix of x_{i+1}: M_d -> M_{d+1}."""
        if (i, d) in self.actions:
            return self.actions[(i, d)]
        return np.zeros((self.dim(d + 1), self.dim(d)), dtype=np.int64)

    def monomial_actions(self, a: int, d: int) -> np.ndarray:
        """Stack of the matrices of all degree-a monomials on M_d."""
        key = (a, d)
        if key in self._monomial_cache:
            return self._monomial_cache[key]
        if a == 0:
            stack = np.eye(self.dim(d), dtype=np.int64)[None, :, :]
        else:
            lower = self.monomial_actions(a - 1, d)
            index = monomial_index(self.e, a - 1)
            table = exponent_table(self.e, a)
            stack = np.zeros((table.shape[0], self.dim(d + a), self.dim(d)), dtype=np.int64)
            for m, exps in enumerate(table):
                i = int(np.flatnonzero(exps)[0])
                reduced = exps.copy()
                reduced[i] -= 1
                previous = lower[index[tuple(int(x) for x in reduced)]]
                stack[m] = matmul_mod(self.action(i, d + a - 1), previous, self.modulus)
        self._monomial_cache[key] = stack
        return stack

    def form_action(self, f: np.ndarray, a: int, d: int) -> np.ndarray:
        """Matrix of a form f of Q_a acting M_d -> M_{d+a}."""
        stack = self.monomial_actions(a, d)
        product = np.tensordot(np.asarray(f, dtype=np.int64), stack, axes=([0], [0]))
        return np.mod(product, self.modulus)

    def ring_action(self, ring: GradedRing, k: int, d: int) -> np.ndarray:
        """Action of the basis monomials of ring_k on M_d."""
        return self.monomial_actions(k, d)[ring.piece(k).basis]

    def hilbert_series(self) -> list[int]:
        top = self.top
        return [] if top is None else [self.dim(d) for d in range(top + 1)]


def check_module(ring: GradedRing, module: GradedModule) -> None:
    """Verify that the defining ideal of ``ring`` kills ``module``.

    Raises:
        IncompatibleModule: if some relation of the ring acts nontrivially
    """
    if ring.e != module.e:
        raise IncompatibleModule("ring and module have different numbers of variables")
    if module.is_zero():
        return
    span = module.top - module.low
    for c in range(1, span + 1):
        relations = ring.ideal_piece(c)
        if relations.shape[0] == 0:
            continue
        for d in module.degrees():
            if module.dim(d + c) == 0:
                continue
            for row in relations:
                if np.any(module.form_action(row, c, d)):
                    raise IncompatibleModule(
                        f"{module.name} is not a module over the {ring.kind} ring"
                    )


def residue_field(e: int, p: int) -> GradedModule:
    """k = Q/(x_1..x_e), concentrated in degree 0."""
    return GradedModule(e=e, modulus=p, dims={0: 1}, name="k")


def zero_module(e: int, p: int, name: str = "0") -> GradedModule:
    return GradedModule(e=e, modulus=p, dims={}, name=name)


def from_algebra(R: GradedArtinianAlgebra, name: str = "R") -> GradedModule:
    """R as a module over itself (and over Q)."""
    dims = {d: R.dim(d) for d in range(R.s + 1)}
    actions = {
        (i, d): R.variable_action(i, d) for i in range(R.e) for d in range(R.s)
    }
    rows = {d: np.eye(R.dim(d), dtype=np.int64) for d in range(R.s + 1)}
    return GradedModule(R.e, R.modulus, dims, actions, name, R, rows)


def ideal_module(R: GradedArtinianAlgebra, J: GradedIdeal, name: str = "J") -> GradedModule:
    """An ideal of R viewed as a graded module."""
    p = R.modulus
    rows = {d: J.piece(d) for d in range(R.s + 1)}
    dims = {d: rows[d].shape[0] for d in rows}
    actions = {}
    for d in range(R.s):
        if dims[d] == 0 or dims[d + 1] == 0:
            continue
        for i in range(R.e):
            images = matmul_mod(rows[d], R.variable_action(i, d).T, p)
            actions[(i, d)] = coordinates_in(rows[d + 1], images, p).T
    return GradedModule(R.e, p, dims, actions, name, R, rows)


def quotient_module(R: GradedArtinianAlgebra, J: GradedIdeal, name: str = "R/J") -> GradedModule:
    """R/J, viewed as the algebra Q/(I + J) acting on itself."""
    return from_algebra(quotient_algebra(R, J), name)


@dataclass(eq=False)
class ModuleMap:
    """A degree-preserving map of graded modules, one matrix per degree."""

    source: GradedModule
    target: GradedModule
    matrices: dict[int, np.ndarray]

    def matrix(self, d: int) -> np.ndarray:
        if d in self.matrices:
            return self.matrices[d]
        return np.zeros((self.target.dim(d), self.source.dim(d)), dtype=np.int64)

    def apply(self, vector: np.ndarray, d: int) -> np.ndarray:
        return matmul_mod(self.matrix(d), vector, self.source.modulus)

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.matrices.values())


def identity_map(module: GradedModule) -> ModuleMap:
    return ModuleMap(
        module, module, {d: np.eye(module.dim(d), dtype=np.int64) for d in module.degrees()}
    )


def module_map(source: GradedModule, target: GradedModule) -> ModuleMap:
    """Map induced by Q-linear identity on representatives.

    Covers inclusions of ideals of one algebra and projections between
    quotients of Q: each basis element is written in Q, reduced in the
    target algebra and expressed in the target basis.

    Raises:
        IncompatibleModule: if some image falls outside the target
    """
    if source.algebra is None or target.algebra is None:
        raise IncompatibleModule("module_map needs modules attached to algebras")
    p = source.modulus
    matrices = {}
    for d in source.degrees():
        in_q = source.algebra.lift(source.basis_rows[d], d)
        if target.algebra.dim(d) == 0:
            matrices[d] = np.zeros((0, source.dim(d)), dtype=np.int64)
            continue
        reduced = target.algebra.reduce(in_q, d)
        empty = np.zeros((0, target.algebra.dim(d)), dtype=np.int64)
        target_rows = target.basis_rows.get(d, empty)
        matrices[d] = coordinates_in(target_rows, reduced, p).T
    return ModuleMap(source, target, matrices)
