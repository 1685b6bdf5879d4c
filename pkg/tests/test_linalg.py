"""Tests for exact linear algebra over F_p."""

import numpy as np
import pytest

from gorpoincare.algebra.linalg import (
    FieldElement,
    Matrix,
    check_modulus,
    extend_basis_mod,
    in_row_space,
    inverse_mod,
    kernel_basis,
    kernel_mod,
    matmul_mod,
    rank,
    rank_mod,
    row_basis_mod,
    row_reduce,
    solve_mod,
)
from gorpoincare.core.errors import BadPrime, InconsistentSystem

P = 32003


class TestModulus:
    """Tests for modulus validation."""

    def test_accepts_default_prime(self):
        assert check_modulus(P) == P

    @pytest.mark.parametrize("p", [2, 1, 0, 15, 32001, 2**31 - 1])
    def test_rejects_bad_moduli(self, p):
        """Even, composite and oversized moduli are refused."""
        with pytest.raises(BadPrime):
            check_modulus(p)


class TestRowReduction:
    """Tests for row_reduce, rank and row bases."""

    def test_identity_rank(self):
        assert rank_mod(np.eye(4, dtype=np.int64), P) == 4

    def test_dependent_rows(self):
        a = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        assert rank_mod(a, P) == 2

    def test_rank_depends_on_characteristic(self):
        """[[1, 1], [1, 8]] has determinant 7: singular mod 7 only."""
        a = np.array([[1, 1], [1, 8]])
        assert rank_mod(a, 7) == 1
        assert rank_mod(a, 11) == 2

    def test_empty_matrix(self):
        assert rank_mod(np.zeros((0, 3), dtype=np.int64), P) == 0

    def test_reduced_form_is_deterministic(self):
        a = np.array([[0, 2, 4], [3, 0, 3]])
        first, pivots = row_reduce(a, 7)
        second, _ = row_reduce(a.copy(), 7)
        assert pivots == [0, 1]
        assert np.array_equal(first, second)
        assert np.array_equal(first[:, :2], np.eye(2, dtype=np.int64))

    def test_pivot_limit(self):
        """Columns past the limit never hold pivots."""
        a = np.array([[0, 0, 1], [0, 0, 2]])
        _, pivots = row_reduce(a, P, pivot_limit=2)
        assert pivots == []

    def test_row_basis_spans(self):
        a = np.array([[1, 1, 0], [2, 2, 0], [0, 1, 1]])
        basis = row_basis_mod(a, P)
        assert basis.shape == (2, 3)
        assert in_row_space(basis, a, P)


class TestKernelAndSolve:
    """Tests for null spaces and linear systems."""

    def test_kernel_annihilated(self):
        a = np.array([[1, 2, 3, 4], [0, 1, 1, 1]])
        null = kernel_mod(a, P)
        assert null.shape == (2, 4)
        assert not np.any(matmul_mod(a, null.T, P))

    def test_kernel_of_empty_matrix_is_everything(self):
        null = kernel_mod(np.zeros((0, 3), dtype=np.int64), P)
        assert np.array_equal(null, np.eye(3, dtype=np.int64))

    def test_solve_vector(self):
        a = np.array([[2, 1], [1, 3]])
        b = np.array([5, 10])
        x = solve_mod(a, b, P)
        assert np.array_equal(matmul_mod(a, x, P), b % P)

    def test_solve_matrix_right_hand_side(self):
        a = np.array([[1, 0, 1], [0, 1, 1]])
        b = np.array([[1, 2], [3, 4]])
        x = solve_mod(a, b, P, rng=np.random.default_rng(5))
        assert x.shape == (3, 2)
        assert np.array_equal(matmul_mod(a, x, P), b)

    def test_inconsistent_system(self):
        a = np.array([[1, 1], [2, 2]])
        with pytest.raises(InconsistentSystem):
            solve_mod(a, np.array([1, 3]), P)

    def test_inverse(self):
        a = np.array([[2, 1], [1, 1]])
        inv = inverse_mod(a, P)
        assert np.array_equal(matmul_mod(a, inv, P), np.eye(2, dtype=np.int64))

    def test_singular_inverse(self):
        with pytest.raises(InconsistentSystem):
            inverse_mod(np.array([[1, 2], [2, 4]]), P)


class TestBasisExtension:
    """Tests for extend_basis_mod and in_row_space."""

    def test_earliest_completion(self):
        span = np.array([[1, 0, 0]])
        candidates = np.array([[2, 0, 0], [0, 1, 0], [0, 3, 0], [0, 0, 1]])
        assert extend_basis_mod(span, candidates, P) == [1, 3]

    def test_without_span(self):
        candidates = np.array([[0, 0], [1, 1], [2, 2], [1, 0]])
        assert extend_basis_mod(np.zeros((0, 2), dtype=np.int64), candidates, P) == [1, 3]

    def test_in_row_space_empty_basis(self):
        empty = np.zeros((0, 2), dtype=np.int64)
        assert in_row_space(empty, np.zeros((1, 2), dtype=np.int64), P)
        assert not in_row_space(empty, np.array([[0, 1]]), P)


class TestFieldTypes:
    """Tests for FieldElement and Matrix."""

    def test_field_arithmetic(self):
        a = FieldElement(5, 7)
        assert int(a + 4) == 2
        assert int(a * 3) == 1
        assert int(a.inverse()) == 3
        assert int(1 - a) == 3
        assert int(a / 5) == 1

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            FieldElement(0, 7).inverse()

    def test_mixed_primes(self):
        with pytest.raises(ValueError):
            FieldElement(1, 7) + FieldElement(1, 11)

    def test_matrix_is_immutable(self):
        m = Matrix.identity(2, 7)
        with pytest.raises(ValueError):
            m.entries[0, 0] = 3

    def test_matrix_rank_and_kernel(self):
        m = Matrix.from_rows([[1, 2], [2, 4]], 7)
        assert rank(m) == 1
        (v,) = kernel_basis(m)
        assert not np.any(m.apply(v))
        assert m.reduced().rows == 1
        assert (m @ Matrix.identity(2, 7)) == m
