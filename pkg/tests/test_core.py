import numpy as np
import pytest

import oracles
from epkit import (
    ConvergenceFailure,
    DimensionMismatch,
    InvalidDimension,
    NotHermitian,
    NotSquare,
    ToleranceConfig,
    adjoint,
    as_matrix,
    eigenvalues,
    hermitian_eig,
    multiply,
    operator_norm,
    svd,
)


class TestAdjoint:
    def test_conjugates_single_entry(self):
        np.testing.assert_array_equal(adjoint([[1j]]), np.array([[-1j]]))

    def test_real_transpose(self):
        np.testing.assert_array_equal(
            adjoint([[1, 2], [3, 4]]), np.array([[1, 3], [2, 4]], dtype=complex)
        )

    def test_matches_entrywise_oracle(self, rng):
        m = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        np.testing.assert_array_equal(adjoint(m), oracles.entrywise_adjoint(m))

    def test_involution_is_exact(self, rng):
        m = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
        np.testing.assert_array_equal(adjoint(adjoint(m)), m)


class TestMultiply:
    def test_identity(self, rng):
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        np.testing.assert_array_equal(multiply(np.eye(3), m), m)

    def test_nilpotent_squares_to_zero(self):
        cell = [[0, 1], [0, 0]]
        np.testing.assert_array_equal(multiply(cell, cell), np.zeros((2, 2)))

    def test_matches_naive_oracle(self, rng):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        np.testing.assert_allclose(multiply(a, b), oracles.naive_matmul(a, b), atol=1e-13)

    def test_rejects_mismatched_shapes(self):
        with pytest.raises(DimensionMismatch):
            multiply(np.ones((2, 3)), np.ones((2, 3)))


class TestSvd:
    def test_diagonal(self, tol):
        fact = svd(np.diag([3.0, 1.0, 0.0]), tol)
        np.testing.assert_allclose(fact.singular_values, [3.0, 1.0, 0.0], atol=1e-15)
        assert fact.numerical_rank == 2

    def test_nilpotent_cell(self, tol):
        fact = svd([[0, 1], [0, 0]], tol)
        np.testing.assert_allclose(fact.singular_values, [1.0, 0.0], atol=1e-15)
        assert fact.numerical_rank == 1

    def test_reconstruction_and_orthonormality(self, rng, tol):
        m = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        fact = svd(m, tol)
        sigma = np.zeros((5, 3))
        np.fill_diagonal(sigma, fact.singular_values)
        recon = fact.left_vectors @ sigma @ fact.right_vectors.conj().T
        bound = 1e-10 * (1.0 + operator_norm(m))
        assert np.linalg.norm(recon - m, 2) <= bound
        assert np.linalg.norm(fact.left_vectors.conj().T @ fact.left_vectors - np.eye(5), 2) <= bound
        assert np.linalg.norm(fact.right_vectors.conj().T @ fact.right_vectors - np.eye(3), 2) <= bound

    def test_zero_matrix_has_rank_zero(self, tol):
        fact = svd(np.zeros((3, 2)), tol)
        assert fact.numerical_rank == 0
        assert fact.range_vectors().shape == (3, 0)

    def test_deterministic_bit_identical(self, rng, tol):
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        f1 = svd(m, tol)
        f2 = svd(m, tol)
        assert np.array_equal(f1.left_vectors, f2.left_vectors)
        assert np.array_equal(f1.singular_values, f2.singular_values)
        assert np.array_equal(f1.right_vectors, f2.right_vectors)
        assert f1.numerical_rank == f2.numerical_rank


class TestHermitianEig:
    def test_diagonal(self, tol):
        w, q = hermitian_eig(np.diag([2.0, -1.0]), tol)
        np.testing.assert_allclose(w, [2.0, -1.0], atol=1e-14)
        np.testing.assert_allclose(np.abs(q), np.eye(2), atol=1e-14)

    def test_symmetric_swap(self, tol):
        w, _ = hermitian_eig([[0, 1], [1, 0]], tol)
        np.testing.assert_allclose(w, [1.0, -1.0], atol=1e-14)

    def test_matches_charpoly_oracle(self, tol):
        rng = np.random.default_rng(7)
        a = oracles.snapped_complex_matrix(rng, 6, denominator=32)
        h = a + a.conj().T
        # entries of h are exact multiples of 1/32, so the oracle is exact
        w, q = hermitian_eig(h, tol)
        expected = np.sort_complex(oracles.charpoly_roots(h, denominator=32))
        assert np.max(np.abs(expected.imag)) < 1e-12
        np.testing.assert_allclose(np.sort(w), np.sort(expected.real), atol=1e-8)
        recon = (q * w) @ q.conj().T
        assert np.linalg.norm(recon - h, 2) <= 1e-12 * (1.0 + np.linalg.norm(h, 2))

    def test_rejects_non_hermitian(self, tol):
        with pytest.raises(NotHermitian):
            hermitian_eig([[0, 1], [0, 0]], tol)
        with pytest.raises(NotHermitian):
            hermitian_eig(np.ones((2, 3)), tol)


class TestEigenvalues:
    def test_nilpotent(self, tol):
        np.testing.assert_allclose(eigenvalues([[0, 1], [0, 0]], tol), [0, 0], atol=1e-14)

    def test_diagonal_multiset(self, tol):
        vals = eigenvalues(np.diag([2.0, -3.0, 1j]), tol)
        assert oracles.multiset_gap(vals, np.array([2.0, -3.0, 1j])) < 1e-14

    def test_matches_quartic_charpoly_oracle(self, tol):
        rng = np.random.default_rng(11)
        m = oracles.snapped_complex_matrix(rng, 4)
        vals = eigenvalues(m, tol)
        roots = oracles.charpoly_roots(m)
        assert oracles.multiset_gap(vals, roots) <= 1e-8

    def test_rejects_non_square(self, tol):
        with pytest.raises(NotSquare):
            eigenvalues(np.ones((2, 3)), tol)

    def test_adjoint_conjugate_multiset(self, rng, tol):
        for _ in range(5):
            m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
            gap = oracles.multiset_gap(eigenvalues(adjoint(m), tol),
                                       eigenvalues(m, tol).conj())
            assert gap <= 1e-8


class TestOperatorNorm:
    def test_zero(self):
        assert operator_norm(np.zeros((2, 2))) == 0.0

    def test_diagonal(self):
        assert operator_norm(np.diag([2.0, 5.0])) == pytest.approx(5.0, abs=1e-14)

    def test_matches_hermitian_eig_oracle(self, rng, tol):
        m = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
        w, _ = hermitian_eig(adjoint(m) @ m, tol)
        assert operator_norm(m) == pytest.approx(np.sqrt(max(w[0], 0.0)), rel=1e-12)


class TestNormSubmultiplicativity:
    def test_on_random_pairs(self, rng):
        for _ in range(20):
            a = rng.standard_normal((5, 4)) + 1j * rng.standard_normal((5, 4))
            b = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
            lhs = operator_norm(a @ b)
            rhs = operator_norm(a) * operator_norm(b)
            assert lhs <= rhs * (1.0 + 1e-12)


class TestValidation:
    def test_tolerance_config_bounds(self):
        with pytest.raises(ValueError):
            ToleranceConfig(rank_rtol=0.0)
        with pytest.raises(ValueError):
            ToleranceConfig(eq_atol=1.5)

    def test_rejects_non_finite_entries(self):
        with pytest.raises(ValueError):
            as_matrix([[np.nan, 0.0], [0.0, 1.0]])
        with pytest.raises(ValueError):
            as_matrix([[np.inf]])

    def test_rejects_non_2d(self):
        with pytest.raises(InvalidDimension):
            as_matrix([1.0, 2.0])

    def test_rejects_oversized(self):
        with pytest.raises(InvalidDimension):
            as_matrix(np.zeros((257, 1)))

    def test_convergence_failure_is_importable(self):
        # The LAPACK backends essentially never fail on valid input; the
        # contract is that failures surface as this type, not silently.
        assert issubclass(ConvergenceFailure, Exception)
