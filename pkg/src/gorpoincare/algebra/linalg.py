"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy ``int64`` arrays with entries in ``[0, p)``. The modulus is
bounded by ``MAX_MODULUS`` so that every product of two residues, summed over
any inner dimension that occurs here, stays inside 64 bits.

Row reduction pivots column by column on the first nonzero entry at or below
the current row, so every routine in this module is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gorpoincare.core.errors import BadPrime, InconsistentSystem
from gorpoincare.utils.helpers import is_prime

DEFAULT_PRIME = 32003
MAX_MODULUS = 2**21


def check_modulus(p: int) -> int:
    """Validate a modulus for use with this module.

    Args:
        p: Candidate modulus

    Returns:
        p unchanged

    Raises:
        BadPrime: if p is not an odd prime below MAX_MODULUS
    """
    if p == 2 or not is_prime(p) or p >= MAX_MODULUS:
        raise BadPrime(f"modulus {p} must be an odd prime below {MAX_MODULUS}")
    return p


def reduce_mod(a: np.ndarray | list, p: int) -> np.ndarray:
    """Return a fresh int64 array with entries reduced into [0, p)."""
    return np.mod(np.asarray(a, dtype=np.int64), p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Matrix product reduced modulo p."""
    return np.mod(np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64), p)


def row_reduce(
    a: np.ndarray, p: int, pivot_limit: int | None = None
) -> tuple[np.ndarray, list[int]]:
    """Bring a matrix to reduced row echelon form.

    Args:
        a: Matrix to reduce (not modified)
        p: Prime modulus
        pivot_limit: Only columns below this index may hold pivots; the
            remaining columns are carried along (augmented systems)

    Returns:
        The reduced matrix, with all of its rows, and the list of pivot columns.
        Rows past ``len(pivots)`` are zero in the pivot-eligible columns.
    """
    work = reduce_mod(a, p)
    if work.ndim != 2:
        raise ValueError("row_reduce expects a 2-dimensional array")
    n_rows, n_cols = work.shape
    limit = n_cols if pivot_limit is None else pivot_limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == n_rows:
            break
        nonzero = np.flatnonzero(work[r:, c])
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            work[[r, k]] = work[[k, r]]
        inv = pow(int(work[r, c]), -1, p)
        work[r, c:] = (work[r, c:] * inv) % p
        column = work[:, c].copy()
        column[r] = 0
        hits = np.flatnonzero(column)
        if hits.size:
            work[hits, c:] = (work[hits, c:] - np.outer(column[hits], work[r, c:])) % p
        pivots.append(c)
        r += 1
    return work, pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    """Rank of a matrix over F_p."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def row_basis_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (reduced echelon rows) of the row space."""
    a = np.asarray(a, dtype=np.int64)
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    reduced, pivots = row_reduce(a, p)
    return reduced[: len(pivots)].copy()


def kernel_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Null space basis of ``a`` as the rows of the returned array.

    One basis vector per non-pivot column ``f``: it has a 1 in column ``f``,
    zero in the other free columns and the negated echelon entries in the
    pivot columns.
    """
    a = np.asarray(a, dtype=np.int64)
    n_cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n_cols, dtype=np.int64)
    reduced, pivots = row_reduce(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = np.zeros((len(free), n_cols), dtype=np.int64)
    if not free:
        return basis
    basis[np.arange(len(free)), free] = 1
    if pivots:
        basis[:, pivots] = np.mod(-reduced[: len(pivots)][:, free].T, p)
    return basis


def solve_mod(
    a: np.ndarray,
    b: np.ndarray,
    p: int,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Solve ``a @ x = b`` over F_p.

    Args:
        a: Coefficient matrix (m x n)
        b: Right-hand side, a vector of length m or an (m x q) matrix
        p: Prime modulus
        rng: When given, a random null space element is added to every
            solution; otherwise the solution with zero free variables is returned

    Returns:
        Solution with shape (n,) or (n, q)

    Raises:
        InconsistentSystem: if some right-hand side is not in the column space
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    rhs = b.reshape(-1, 1) if vector else b
    m, n = a.shape
    if rhs.shape[0] != m:
        raise ValueError(f"right-hand side has {rhs.shape[0]} rows, expected {m}")
    q = rhs.shape[1]
    if m == 0:
        x = np.zeros((n, q), dtype=np.int64)
        pivots: list[int] = []
        echelon = np.zeros((0, n), dtype=np.int64)
    else:
        augmented = np.hstack([a % p, np.eye(m, dtype=np.int64)])
        reduced, pivots = row_reduce(augmented, p, pivot_limit=n)
        transform = reduced[:, n:]
        y = matmul_mod(transform, rhs, p)
        if np.any(y[len(pivots):]):
            raise InconsistentSystem("right-hand side is not in the column space")
        x = np.zeros((n, q), dtype=np.int64)
        x[pivots] = y[: len(pivots)]
        echelon = reduced[: len(pivots), :n]
    if rng is not None:
        null = kernel_mod(echelon, p) if m else np.eye(n, dtype=np.int64)
        if null.shape[0]:
            weights = rng.integers(0, p, size=(null.shape[0], q), dtype=np.int64)
            x = np.mod(x + matmul_mod(null.T, weights, p), p)
    return x[:, 0] if vector else x


def inverse_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p.

    Raises:
        InconsistentSystem: if the matrix is singular
    """
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if rank_mod(a, p) != n:
        raise InconsistentSystem("matrix is singular")
    return solve_mod(a, np.eye(n, dtype=np.int64), p)


def extend_basis_mod(span: np.ndarray, candidates: np.ndarray, p: int) -> list[int]:
    """Greedily extend the row space of ``span`` by rows of ``candidates``.

    A candidate is kept when it is independent of ``span`` together with the
    candidates kept before it, so the result is the earliest completion.

    Returns:
        Indices of the kept candidate rows
    """
    span = np.asarray(span, dtype=np.int64)
    candidates = np.asarray(candidates, dtype=np.int64)
    if candidates.shape[0] == 0:
        return []
    offset = span.shape[0]
    stacked = np.vstack([span, candidates]) if offset else candidates
    _, pivots = row_reduce(stacked.T, p)
    return [c - offset for c in pivots if c >= offset]


def in_row_space(basis: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    """Check that every row of ``vectors`` lies in the row space of ``basis``."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.shape[0] == 0:
        return True
    basis = np.asarray(basis, dtype=np.int64)
    if basis.shape[0] == 0:
        return not np.any(vectors % p)
    return rank_mod(np.vstack([basis, vectors]), p) == rank_mod(basis, p)


@dataclass(frozen=True)
class FieldElement:
    """An element of F_p."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("field elements over different primes")
            return other.residue
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other: object) -> "FieldElement":
        return FieldElement(self.residue + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: object) -> "FieldElement":
        return FieldElement(self.residue - self._coerce(other), self.modulus)

    def __rsub__(self, other: object) -> "FieldElement":
        return FieldElement(self._coerce(other) - self.residue, self.modulus)

    def __mul__(self, other: object) -> "FieldElement":
        return FieldElement(self.residue * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.residue, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return FieldElement(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other: object) -> "FieldElement":
        divisor = FieldElement(self._coerce(other), self.modulus)
        return self * divisor.inverse()

    def __int__(self) -> int:
        return self.residue


@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix over F_p; immutable after construction."""

    entries: np.ndarray
    modulus: int

    def __post_init__(self) -> None:
        entries = reduce_mod(self.entries, self.modulus)
        if entries.ndim != 2:
            raise ValueError("Matrix entries must be 2-dimensional")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: list[list[int]], modulus: int, cols: int | None = None) -> "Matrix":
        """Build a matrix from nested lists (``cols`` is needed for zero rows)."""
        if not rows:
            return cls(np.zeros((0, cols or 0), dtype=np.int64), modulus)
        return cls(np.array(rows, dtype=np.int64), modulus)

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "Matrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @classmethod
    def identity(cls, n: int, modulus: int) -> "Matrix":
        return cls(np.eye(n, dtype=np.int64), modulus)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, key: tuple[int, int]) -> FieldElement:
        return FieldElement(int(self.entries[key]), self.modulus)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.modulus != self.modulus:
            raise ValueError("matrices over different primes")
        return Matrix(matmul_mod(self.entries, other.entries, self.modulus), self.modulus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.entries, other.entries)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Multiply a column vector."""
        return matmul_mod(self.entries, vector, self.modulus)

    def is_zero(self) -> bool:
        return not np.any(self.entries)

    def reduced(self) -> "Matrix":
        """Reduced row echelon form, zero rows dropped."""
        rows = row_basis_mod(self.entries, self.modulus).reshape(-1, self.cols)
        return Matrix(rows, self.modulus)


def rank(m: Matrix) -> int:
    """Rank of a matrix: the number of pivots after row reduction."""
    return rank_mod(m.entries, m.modulus)


def kernel_basis(m: Matrix) -> list[np.ndarray]:
    """Basis of the null space of ``m`` as a list of column vectors."""
    return list(kernel_mod(m.entries, m.modulus))
