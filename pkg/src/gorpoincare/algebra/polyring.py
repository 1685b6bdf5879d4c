"""Monomials, graded pieces and contraction for Q = k[x_1..x_e] and its dual.

Monomials of degree d in e variables are enumerated once, in descending
lexicographic order (``x^3, x^2y, xy^2, y^3`` for e = 2, d = 3), and that order
indexes every coefficient vector in the package.

The module also holds ``GradedRing``, the degree-by-degree model of a standard
graded quotient Q/J shared by the polynomial ring, hypersurfaces and Artinian
algebras.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from gorpoincare.algebra.linalg import matmul_mod, reduce_mod, row_reduce
from gorpoincare.utils.helpers import piece_dimension

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Monomial:
    """A monomial x^u of Q (or X^u of the dual space)."""

    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def e(self) -> int:
        return len(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __str__(self) -> str:
        factors = []
        for i, a in enumerate(self.exponents, start=1):
            if a == 1:
                factors.append(f"x{i}")
            elif a > 1:
                factors.append(f"x{i}^{a}")
        return "*".join(factors) or "1"


@lru_cache(maxsize=None)
def exponent_table(e: int, d: int) -> np.ndarray:
    """Exponent vectors of all degree-d monomials, one row per monomial."""
    if d < 0:
        return np.zeros((0, e), dtype=np.int64)
    rows = []
    for combo in combinations_with_replacement(range(e), d):
        row = [0] * e
        for var in combo:
            row[var] += 1
        rows.append(row)
    table = np.array(rows, dtype=np.int64).reshape(-1, e)
    table.setflags(write=False)
    return table


def monomials_of_degree(e: int, d: int) -> list[Monomial]:
    """All monomials of degree d in e variables, in canonical order.

    Args:
        e: Number of variables, at least 1
        d: Degree, at least 0

    Returns:
        binomial(e - 1 + d, e - 1) monomials without duplicates
    """
    if e < 1:
        raise ValueError("need at least one variable")
    return [Monomial(tuple(int(a) for a in row)) for row in exponent_table(e, d)]


@lru_cache(maxsize=None)
def monomial_index(e: int, d: int) -> dict[tuple[int, ...], int]:
    """Map from exponent tuple to position in the canonical order."""
    return {tuple(int(a) for a in row): i for i, row in enumerate(exponent_table(e, d))}


@lru_cache(maxsize=None)
def product_table(e: int, a: int, b: int) -> np.ndarray:
    """Index of x^u * x^v in degree a + b, for u of degree a and v of degree b."""
    left = exponent_table(e, a)
    right = exponent_table(e, b)
    index = monomial_index(e, a + b)
    table = np.empty((left.shape[0], right.shape[0]), dtype=np.int64)
    for i, u in enumerate(left):
        for j, v in enumerate(right):
            table[i, j] = index[tuple(int(x) for x in u + v)]
    table.setflags(write=False)
    return table


def variable_vector(e: int, i: int) -> np.ndarray:
    """Coordinates of the variable x_{i+1} in Q_1."""
    vec = np.zeros(e, dtype=np.int64)
    vec[i] = 1
    return vec


@dataclass(frozen=True, eq=False)
class Form:
    """A homogeneous element of Q of a given degree."""

    e: int
    degree: int
    coeffs: np.ndarray
    modulus: int

    def __post_init__(self) -> None:
        coeffs = reduce_mod(self.coeffs, self.modulus)
        if coeffs.shape != (piece_dimension(self.e, self.degree),):
            raise ValueError(
                f"form of degree {self.degree} in {self.e} variables needs "
                f"{piece_dimension(self.e, self.degree)} coefficients"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_terms(
        cls, e: int, degree: int, terms: dict[tuple[int, ...], int], modulus: int
    ) -> "Form":
        coeffs = np.zeros(piece_dimension(e, degree), dtype=np.int64)
        index = monomial_index(e, degree)
        for exps, c in terms.items():
            coeffs[index[tuple(exps)]] += c
        return cls(e, degree, coeffs, modulus)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __mul__(self, other: "Form") -> "Form":
        table = product_table(self.e, self.degree, other.degree)
        out = np.zeros(piece_dimension(self.e, self.degree + other.degree), dtype=np.int64)
        outer = np.outer(self.coeffs, other.coeffs) % self.modulus
        np.add.at(out, table.ravel(), outer.ravel())
        return Form(self.e, self.degree + other.degree, out, self.modulus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            (self.e, self.degree, self.modulus) == (other.e, other.degree, other.modulus)
            and np.array_equal(self.coeffs, other.coeffs)
        )


@dataclass(frozen=True, eq=False)
class DualElement:
    """A homogeneous element of the divided-power dual space D, degree ``degree``."""

    e: int
    degree: int
    coeffs: np.ndarray
    modulus: int

    def __post_init__(self) -> None:
        coeffs = reduce_mod(self.coeffs, self.modulus)
        if coeffs.shape != (piece_dimension(self.e, self.degree),):
            raise ValueError("dual element has the wrong number of coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_terms(
        cls, e: int, degree: int, terms: dict[tuple[int, ...], int], modulus: int
    ) -> "DualElement":
        form = Form.from_terms(e, degree, terms, modulus)
        return cls(e, degree, form.coeffs, modulus)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def terms(self) -> list[tuple[int, tuple[int, ...]]]:
        """Nonzero (coefficient, exponents) pairs in canonical order."""
        table = exponent_table(self.e, self.degree)
        return [
            (int(c), tuple(int(a) for a in table[i]))
            for i, c in enumerate(self.coeffs)
            if c
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DualElement):
            return NotImplemented
        return (
            (self.e, self.degree, self.modulus) == (other.e, other.degree, other.modulus)
            and np.array_equal(self.coeffs, other.coeffs)
        )


@dataclass(frozen=True, eq=False)
class GradedPiece:
    """A subspace of Q_d spanned by the rows of ``vectors``."""

    e: int
    degree: int
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


def contraction_matrix(F: DualElement, a: int) -> np.ndarray:
    """Matrix of Q_a -> D_{b-a}, f -> f o F, acting on row vectors.

    Entry (u, w) is the coefficient of X^{u+w} in F; the matrix is empty when
    a exceeds the degree of F.
    """
    b = F.degree
    if a > b:
        return np.zeros((piece_dimension(F.e, a), 0), dtype=np.int64)
    return F.coeffs[product_table(F.e, a, b - a)]


def contract(f: Form, F: DualElement) -> DualElement:
    """Contraction f o F: x^u o X^v = X^(v-u) when u divides v, else 0."""
    if f.e != F.e or f.modulus != F.modulus:
        raise ValueError("form and dual element live over different rings")
    b = F.degree - f.degree
    if b < 0:
        return DualElement(F.e, 0, np.zeros(1, dtype=np.int64), F.modulus)
    coeffs = matmul_mod(f.coeffs, contraction_matrix(F, f.degree), F.modulus)
    return DualElement(F.e, b, coeffs, F.modulus)


def parse_dual_text(text: str, modulus: int, e: int | None = None) -> DualElement:
    """Parse the dual generator text format.

    One term per line, ``<coefficient> <exp_1> ... <exp_e>``; blank lines and
    ``#`` comments are ignored. All terms must share one degree.

    Raises:
        ValueError: on malformed lines or mixed degrees
    """
    terms: dict[tuple[int, ...], int] = {}
    degree: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            values = [int(x) for x in fields]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected integers, got {raw!r}") from exc
        coeff, exps = values[0], tuple(values[1:])
        if e is None:
            e = len(exps)
        if len(exps) != e or e == 0 or any(a < 0 for a in exps):
            raise ValueError(f"line {lineno}: expected {e} nonnegative exponents")
        if degree is None:
            degree = sum(exps)
        elif sum(exps) != degree:
            raise ValueError(f"line {lineno}: term of degree {sum(exps)}, expected {degree}")
        terms[exps] = terms.get(exps, 0) + coeff
    if e is None or degree is None:
        raise ValueError("no terms found")
    return DualElement.from_terms(e, degree, terms, modulus)


def format_dual_text(F: DualElement, header: str | None = None) -> str:
    """Render a dual element in the dual generator text format."""
    lines = [f"# {line}" for line in (header or "").splitlines()]
    for coeff, exps in F.terms():
        lines.append(" ".join(str(v) for v in (coeff, *exps)))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class RingPiece:
    """Degree-d data of a graded ring: chosen basis monomials and normal form."""

    degree: int
    basis: np.ndarray
    normal_form: np.ndarray
    is_identity: bool

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


class GradedRing(ABC):
    """A standard graded quotient Q/J described one degree at a time.

    Subclasses supply the degree-d piece of J. The basis of each quotient piece
    is the earliest set of monomials independent modulo J_d, and the normal form
    matrix writes every monomial of Q_d in that basis.
    """

    kind: str = "ring"

    def __init__(self, e: int, modulus: int):
        if e < 1:
            raise ValueError("need at least one variable")
        self.e = e
        self.modulus = modulus
        self._pieces: dict[int, RingPiece] = {}
        self._mult_cache: dict[tuple[int, int], np.ndarray] = {}
        self._tensors: dict[tuple[int, int], np.ndarray] = {}

    @property
    def top_degree(self) -> int | None:
        """Largest degree with a nonzero piece, None when unbounded."""
        return None

    @abstractmethod
    def ideal_piece(self, d: int) -> np.ndarray:
        """Rows spanning J_d in the monomial coordinates of Q_d."""

    def piece(self, d: int) -> RingPiece:
        if d not in self._pieces:
            self._pieces[d] = self._build_piece(d)
        return self._pieces[d]

    def _build_piece(self, d: int) -> RingPiece:
        n = piece_dimension(self.e, d)
        top = self.top_degree
        if d < 0 or (top is not None and d > top):
            empty = np.zeros(0, dtype=np.int64)
            return RingPiece(d, empty, np.zeros((0, n), dtype=np.int64), False)
        ideal = np.asarray(self.ideal_piece(d), dtype=np.int64).reshape(-1, n)
        if ideal.shape[0] == 0 or not np.any(ideal):
            return RingPiece(d, np.arange(n, dtype=np.int64), np.eye(n, dtype=np.int64), True)
        # Reversed columns: pivots are the latest monomials of each relation.
        reduced, pivots = row_reduce(ideal[:, ::-1], self.modulus)
        pivot_monomials = [n - 1 - c for c in pivots]
        pivot_set = set(pivot_monomials)
        basis = np.array([m for m in range(n) if m not in pivot_set], dtype=np.int64)
        normal_form = np.zeros((basis.shape[0], n), dtype=np.int64)
        normal_form[np.arange(basis.shape[0]), basis] = 1
        for row, m in enumerate(pivot_monomials):
            relation = reduced[row, ::-1]
            normal_form[:, m] = (-relation[basis]) % self.modulus
        logger.debug("%s degree %d: dim %d of %d", self.kind, d, basis.shape[0], n)
        return RingPiece(d, basis, normal_form, False)

    def dim(self, d: int) -> int:
        return self.piece(d).dim

    def basis(self, d: int) -> list[Monomial]:
        table = exponent_table(self.e, d)
        return [Monomial(tuple(int(a) for a in table[m])) for m in self.piece(d).basis]

    def normal_form(self, d: int) -> np.ndarray:
        return self.piece(d).normal_form

    def reduce(self, vector: np.ndarray, d: int) -> np.ndarray:
        """Normal form of Q_d coordinates (vector or rows) in R_d coordinates."""
        piece = self.piece(d)
        vector = np.asarray(vector, dtype=np.int64)
        if piece.is_identity:
            return vector % self.modulus
        return matmul_mod(vector, piece.normal_form.T, self.modulus)

    def lift(self, vector: np.ndarray, d: int) -> np.ndarray:
        """Representative in Q_d coordinates supported on the basis monomials."""
        vector = np.asarray(vector, dtype=np.int64)
        piece = self.piece(d)
        out = np.zeros(vector.shape[:-1] + (piece_dimension(self.e, d),), dtype=np.int64)
        out[..., piece.basis] = vector
        return out

    def multiplication_matrix(self, f: np.ndarray, a: int, k: int) -> np.ndarray:
        """Matrix of R_k -> R_{a+k}, v -> f v, for f given in Q_a coordinates."""
        f = np.asarray(f, dtype=np.int64) % self.modulus
        target = self.piece(a + k)
        source = self.piece(k)
        n_target = piece_dimension(self.e, a + k)
        if source.dim == 0 or target.dim == 0:
            return np.zeros((target.dim, source.dim), dtype=np.int64)
        support = np.flatnonzero(f)
        scatter = np.zeros((n_target, source.dim), dtype=np.int64)
        if support.size:
            table = product_table(self.e, a, k)[np.ix_(support, source.basis)]
            cols = np.broadcast_to(np.arange(source.dim), table.shape)
            weights = np.broadcast_to(f[support][:, None], table.shape)
            np.add.at(scatter, (table.ravel(), cols.ravel()), weights.ravel())
            scatter %= self.modulus
        if target.is_identity:
            return scatter
        return matmul_mod(target.normal_form, scatter, self.modulus)

    def mult_tensor(self, a: int, k: int) -> np.ndarray:
        """T[:, u, v] = normal form of (basis_u * basis_v), shape (dim_{a+k}, dim_a, dim_k)."""
        key = (a, k)
        if key not in self._tensors:
            left, right, target = self.piece(a), self.piece(k), self.piece(a + k)
            if min(left.dim, right.dim, target.dim) == 0 or a < 0 or k < 0:
                tensor = np.zeros((target.dim, left.dim, right.dim), dtype=np.int64)
            else:
                indices = product_table(self.e, a, k)[np.ix_(left.basis, right.basis)]
                tensor = target.normal_form[:, indices]
            tensor.setflags(write=False)
            self._tensors[key] = tensor
        return self._tensors[key]

    def element_matrix(self, c: np.ndarray, a: int, k: int) -> np.ndarray:
        """Multiplication by an element of R_a given in R_a coordinates: R_k -> R_{a+k}."""
        tensor = self.mult_tensor(a, k)
        product = np.tensordot(tensor, np.asarray(c, dtype=np.int64), axes=([1], [0]))
        return np.mod(product, self.modulus)

    def variable_action(self, i: int, k: int) -> np.ndarray:
        """Matrix of multiplication by x_{i+1}: R_k -> R_{k+1}."""
        key = (i, k)
        if key not in self._mult_cache:
            self._mult_cache[key] = self.multiplication_matrix(variable_vector(self.e, i), 1, k)
        return self._mult_cache[key]

    def multiply(self, u: np.ndarray, a: int, v: np.ndarray, b: int) -> np.ndarray:
        """Product of u in R_a and v in R_b, in R_{a+b} coordinates."""
        return matmul_mod(self.element_matrix(u, a, b), v, self.modulus)

    def hilbert_series(self, upto: int) -> list[int]:
        return [self.dim(d) for d in range(upto + 1)]


class PolynomialRing(GradedRing):
    """Q = k[x_1..x_e] itself."""

    kind = "polynomial"

    def ideal_piece(self, d: int) -> np.ndarray:
        return np.zeros((0, piece_dimension(self.e, d)), dtype=np.int64)


class HypersurfaceRing(GradedRing):
    """P = Q/(h) for a nonzero form h of degree t."""

    kind = "hypersurface"

    def __init__(self, h: Form):
        super().__init__(h.e, h.modulus)
        if h.is_zero():
            raise ValueError("hypersurface equation must be nonzero")
        self.h = h

    @property
    def t(self) -> int:
        return self.h.degree

    def ideal_piece(self, d: int) -> np.ndarray:
        t = self.h.degree
        if d < t:
            return np.zeros((0, piece_dimension(self.e, d)), dtype=np.int64)
        multipliers = exponent_table(self.e, d - t).shape[0]
        rows = np.zeros((multipliers, piece_dimension(self.e, d)), dtype=np.int64)
        table = product_table(self.e, t, d - t)
        support = np.flatnonzero(self.h.coeffs)
        for j in range(multipliers):
            rows[j, table[support, j]] = self.h.coeffs[support]
        return rows
