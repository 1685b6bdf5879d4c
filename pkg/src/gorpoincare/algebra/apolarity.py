"""Gorenstein Artinian algebras from dual generators via apolarity.

``R = Q/I`` with ``I = Ann(F)``: for d <= s, I_d is the kernel of the
contraction map Q_d -> D_{s-d}, f -> f o F, and I_d = Q_d above s. Ideal
pieces are stored as reduced echelon rows, so they are canonical.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TypeVar

import numpy as np

from gorpoincare.algebra.linalg import (
    check_modulus,
    in_row_space,
    inverse_mod,
    kernel_mod,
    matmul_mod,
    rank_mod,
    row_basis_mod,
)
from gorpoincare.algebra.polyring import (
    DualElement,
    Form,
    GradedPiece,
    GradedRing,
    contraction_matrix,
    exponent_table,
    format_dual_text,
    parse_dual_text,
)
from gorpoincare.core.errors import BadPrime, CoordinateForm, UnitIdeal, ZeroGenerator
from gorpoincare.utils.helpers import piece_dimension

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DualGenerator:
    """A degree-s element of the dual space, defining R = Q/Ann(F)."""

    element: DualElement

    @property
    def e(self) -> int:
        return self.element.e

    @property
    def s(self) -> int:
        return self.element.degree

    @property
    def modulus(self) -> int:
        return self.element.modulus

    def validate(self) -> None:
        """Raise ZeroGenerator or BadPrime when F cannot define an algebra."""
        if self.element.is_zero():
            raise ZeroGenerator("dual generator is identically zero")
        check_modulus(self.modulus)
        if self.modulus <= self.s:
            raise BadPrime(f"prime {self.modulus} must exceed the socle degree {self.s}")


class GradedArtinianAlgebra(GradedRing):
    """R = Q/I with I given by its pieces I_0..I_s; I_d = Q_d for d > s."""

    kind = "artinian"

    def __init__(
        self,
        e: int,
        s: int,
        modulus: int,
        ideal: dict[int, np.ndarray],
        generator: DualGenerator | None = None,
    ):
        super().__init__(e, modulus)
        self._declared_top = s
        self.ideal = {
            d: row_basis_mod(
                np.asarray(ideal.get(d, np.zeros((0, piece_dimension(e, d)))), dtype=np.int64)
                .reshape(-1, piece_dimension(e, d)),
                modulus,
            )
            for d in range(s + 1)
        }
        self.generator = generator
        top = s
        while top > 0 and self.ideal[top].shape[0] == piece_dimension(e, top):
            top -= 1
        self.s = top

    @property
    def top_degree(self) -> int:
        return self.s

    def ideal_piece(self, d: int) -> np.ndarray:
        if d < 0 or d > self._declared_top:
            return np.eye(piece_dimension(self.e, max(d, 0)), dtype=np.int64)
        return self.ideal[d]

    def hilbert_function(self) -> tuple[int, ...]:
        return tuple(self.dim(d) for d in range(self.s + 1))

    @property
    def length(self) -> int:
        return sum(self.hilbert_function())

    @property
    def effective_e(self) -> int:
        """Embedding dimension h_R(1), which may be below the declared e."""
        return self.dim(1) if self.s >= 1 else 0

    def initial_degree(self) -> int:
        """Smallest d with I_d != 0 (that is v(R) for a standard graded algebra)."""
        for d in range(1, self._declared_top + 1):
            if self.ideal[d].shape[0]:
                return d
        return self._declared_top + 1


@dataclass
class GradedIdeal:
    """Ideal of a graded algebra: per degree, reduced rows in R_d coordinates."""

    algebra: GradedArtinianAlgebra
    pieces: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        R = self.algebra
        self.pieces = {
            d: row_basis_mod(
                np.asarray(self.pieces.get(d, np.zeros((0, R.dim(d)))), dtype=np.int64)
                .reshape(-1, R.dim(d)),
                R.modulus,
            )
            for d in range(R.s + 1)
        }

    def piece(self, d: int) -> np.ndarray:
        if d in self.pieces:
            return self.pieces[d]
        return np.zeros((0, self.algebra.dim(d)), dtype=np.int64)

    def dim(self, d: int) -> int:
        return self.piece(d).shape[0]

    def dims(self) -> tuple[int, ...]:
        return tuple(self.dim(d) for d in range(self.algebra.s + 1))

    def is_zero(self) -> bool:
        return not any(self.dims())

    def contains(self, other: "GradedIdeal") -> bool:
        p = self.algebra.modulus
        return all(
            in_row_space(self.piece(d), other.piece(d), p) for d in range(self.algebra.s + 1)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        return self.dims() == other.dims() and self.contains(other)

    def initial_degree(self) -> int | None:
        for d in range(self.algebra.s + 1):
            if self.dim(d):
                return d
        return None


def apolar_ideal(F: DualGenerator) -> dict[int, GradedPiece]:
    """Pieces I_0..I_s of Ann(F).

    Raises:
        ZeroGenerator: if F = 0
    """
    F.validate()
    pieces = {}
    for d in range(F.s + 1):
        cat = contraction_matrix(F.element, d)
        rows = row_basis_mod(kernel_mod(cat.T, F.modulus), F.modulus)
        pieces[d] = GradedPiece(F.e, d, rows)
        logger.debug("I_%d has dimension %d of %d", d, rows.shape[0], piece_dimension(F.e, d))
    return pieces


def build_algebra(F: DualGenerator) -> GradedArtinianAlgebra:
    """Assemble R = Q/Ann(F) with bases, normal forms and multiplication."""
    pieces = apolar_ideal(F)
    return GradedArtinianAlgebra(
        F.e, F.s, F.modulus, {d: piece.vectors for d, piece in pieces.items()}, generator=F
    )


def hilbert_function(R: GradedArtinianAlgebra) -> tuple[int, ...]:
    return R.hilbert_function()


def power_ideal(R: GradedArtinianAlgebra, i: int) -> GradedIdeal:
    """m^i: the full pieces R_d for d >= i."""
    return GradedIdeal(
        R, {d: np.eye(R.dim(d), dtype=np.int64) for d in range(max(i, 0), R.s + 1)}
    )


def ideal_generated(R: GradedArtinianAlgebra, generators: dict[int, np.ndarray]) -> GradedIdeal:
    """Smallest ideal containing the given homogeneous elements (R_d coordinates)."""
    pieces: dict[int, np.ndarray] = {}
    previous = np.zeros((0, R.dim(0)), dtype=np.int64)
    for d in range(R.s + 1):
        given = generators.get(d, np.zeros((0, R.dim(d))))
        rows = [np.asarray(given, dtype=np.int64).reshape(-1, R.dim(d))]
        if d > 0 and previous.shape[0]:
            for i in range(R.e):
                rows.append(matmul_mod(previous, R.variable_action(i, d - 1).T, R.modulus))
        current = row_basis_mod(np.vstack(rows), R.modulus)
        pieces[d] = current
        previous = current
    return GradedIdeal(R, pieces)


def variables_ideal(R: GradedArtinianAlgebra, indices: list[int]) -> GradedIdeal:
    """Ideal generated by the images of the given variables."""
    gens = R.reduce(np.eye(R.e, dtype=np.int64)[indices], 1) if R.s >= 1 else None
    return ideal_generated(R, {1: gens} if gens is not None else {})


def annihilator(R: GradedArtinianAlgebra, J: GradedIdeal) -> GradedIdeal:
    """{v in R : v J = 0}, computed degree by degree as a joint kernel."""
    pieces = {}
    for d in range(R.s + 1):
        blocks = []
        for c in range(R.s + 1 - d):
            for w in J.piece(c):
                blocks.append(R.element_matrix(w, c, d))
        if blocks:
            pieces[d] = kernel_mod(np.vstack(blocks), R.modulus)
        else:
            pieces[d] = np.eye(R.dim(d), dtype=np.int64)
    return GradedIdeal(R, pieces)


def socle(R: GradedArtinianAlgebra) -> GradedIdeal:
    """Soc(R) = ann(m)."""
    return annihilator(R, power_ideal(R, 1))


def ideal_product(R: GradedArtinianAlgebra, J: GradedIdeal, K: GradedIdeal) -> GradedIdeal:
    """The product ideal J K."""
    pieces = {}
    for d in range(R.s + 1):
        rows = []
        for c in range(d + 1):
            right = K.piece(d - c)
            if not right.shape[0]:
                continue
            for w in J.piece(c):
                rows.append(matmul_mod(right, R.element_matrix(w, c, d - c).T, R.modulus))
        pieces[d] = np.vstack(rows) if rows else np.zeros((0, R.dim(d)), dtype=np.int64)
    return GradedIdeal(R, pieces)


def quotient_algebra(R: GradedArtinianAlgebra, J: GradedIdeal) -> GradedArtinianAlgebra:
    """R/J as a new algebra over the same Q.

    Raises:
        UnitIdeal: if J contains 1
    """
    if J.dim(0):
        raise UnitIdeal("cannot form the quotient by the unit ideal")
    ideal = {}
    for d in range(R.s + 1):
        lifted = R.lift(J.piece(d), d)
        ideal[d] = np.vstack([R.ideal_piece(d), lifted])
    return GradedArtinianAlgebra(R.e, R.s, R.modulus, ideal)


def truncation(R: GradedArtinianAlgebra, i: int) -> GradedArtinianAlgebra:
    """R/m^i."""
    return quotient_algebra(R, power_ideal(R, i))


def socle_quotient(R: GradedArtinianAlgebra) -> GradedArtinianAlgebra:
    """R/Soc(R)."""
    return quotient_algebra(R, socle(R))


def sample_dual_generator(e: int, s: int, p: int, seed: int) -> DualGenerator:
    """Uniformly random degree-s dual generator, a deterministic function of seed.

    Raises:
        BadPrime: if p is not an odd prime or p <= s
    """
    if e < 1 or s < 1:
        raise ValueError("need e >= 1 and s >= 1")
    check_modulus(p)
    if p <= s:
        raise BadPrime(f"prime {p} must exceed the socle degree {s}")
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=piece_dimension(e, s), dtype=np.int64)
    return DualGenerator(DualElement(e, s, coeffs, p))


def sample_invertible_matrix(e: int, p: int, seed: int) -> np.ndarray:
    """Random invertible e x e matrix over F_p, resampled until invertible."""
    rng = np.random.default_rng(seed)
    while True:
        g = rng.integers(0, p, size=(e, e), dtype=np.int64)
        if rank_mod(g, p) == e:
            return g


def substitution_matrix(g: np.ndarray, d: int, p: int) -> np.ndarray:
    """Matrix of f(x) -> f(g x) on Q_d, where x_i -> sum_j g[j, i] x_j."""
    e = g.shape[0]
    linear = [Form(e, 1, g[:, i], p) for i in range(e)]
    powers: dict[tuple[int, int], Form] = {}

    def power(i: int, a: int) -> Form:
        if (i, a) not in powers:
            if a == 0:
                powers[(i, a)] = Form(e, 0, np.ones(1, dtype=np.int64), p)
            else:
                powers[(i, a)] = power(i, a - 1) * linear[i]
        return powers[(i, a)]

    table = exponent_table(e, d)
    phi = np.zeros((table.shape[0], table.shape[0]), dtype=np.int64)
    for col, exps in enumerate(table):
        image = Form(e, 0, np.ones(1, dtype=np.int64), p)
        for i, a in enumerate(exps):
            if a:
                image = image * power(i, int(a))
        phi[:, col] = image.coeffs
    return phi


T = TypeVar("T", DualGenerator, GradedArtinianAlgebra)


def apply_coordinate_change(obj: T, g: np.ndarray) -> T:
    """Transport a dual generator or an algebra along x -> g x."""
    p = obj.modulus
    if isinstance(obj, DualGenerator):
        phi = substitution_matrix(g, obj.s, p)
        inverse_t = inverse_mod(phi.T, p)
        coeffs = matmul_mod(inverse_t, obj.element.coeffs, p)
        return DualGenerator(DualElement(obj.e, obj.s, coeffs, p))
    ideal = {}
    for d, rows in obj.ideal.items():
        ideal[d] = matmul_mod(rows, substitution_matrix(g, d, p).T, p) if rows.shape[0] else rows
    generator = apply_coordinate_change(obj.generator, g) if obj.generator is not None else None
    return GradedArtinianAlgebra(obj.e, obj._declared_top, p, ideal, generator=generator)


def generic_coordinate_change(obj: T, seed: int) -> T:
    """Apply a random invertible linear change of variables drawn from seed."""
    g = sample_invertible_matrix(obj.e, obj.modulus, seed)
    return apply_coordinate_change(obj, g)


def hypersurface_equation(R: GradedArtinianAlgebra, t: int) -> Form:
    """The first reduced row of I_t, required to read x_1^t + C.

    C automatically lies in (x_2..x_e) since x_1^t is the only degree-t
    monomial free of those variables.

    Raises:
        CoordinateForm: if I_t is zero or no element has a x_1^t term
    """
    rows = R.ideal_piece(t)
    if rows.shape[0] == 0 or rows[0, 0] != 1:
        raise CoordinateForm(f"I_{t} has no element of the form x_1^{t} + C")
    return Form(R.e, t, rows[0], R.modulus)


def first_ideal_form(R: GradedArtinianAlgebra, t: int) -> Form:
    """First element of the deterministic I_t basis, whatever its shape."""
    rows = R.ideal_piece(t)
    if rows.shape[0] == 0:
        raise CoordinateForm(f"I_{t} is zero")
    return Form(R.e, t, rows[0], R.modulus)


def algebra_to_dict(R: GradedArtinianAlgebra) -> dict[str, Any]:
    """JSON-ready description: e, s, p, basis monomials and I_d bases."""
    return {
        "e": R.e,
        "effective_e": R.effective_e,
        "s": R.s,
        "p": R.modulus,
        "hilbert_function": list(R.hilbert_function()),
        "basis": {str(d): [list(m.exponents) for m in R.basis(d)] for d in range(R.s + 1)},
        "ideal": {
            str(d): [[int(c) for c in row] for row in R.ideal_piece(d)] for d in range(R.s + 1)
        },
    }


def load_dual_generator(path: str | Path, modulus: int, e: int | None = None) -> DualGenerator:
    with open(path, "r", encoding="utf-8") as f:
        return DualGenerator(parse_dual_text(f.read(), modulus, e))


def dump_dual_generator(F: DualGenerator, path: str | Path | None = None, header: str = "") -> str:
    """Write F in the dual generator text format; returns the text."""
    text = format_dual_text(F.element, header or f"e={F.e} s={F.s} p={F.modulus}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
