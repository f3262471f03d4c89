import numpy as np
import pytest

from epkit import (
    NotSquare,
    adjoint,
    carrier_basis,
    classify,
    is_ep,
    is_hypo_ep,
    is_normal,
    range_basis,
    subspace_eq,
)


def embedded_ep(rng, dim, rank):
    """V blockdiag(A, 0) V* with unitary V: range and adjoint range coincide."""
    a = rng.standard_normal((rank, rank)) + 1j * rng.standard_normal((rank, rank))
    a += rank * np.eye(rank)  # keep the corner comfortably invertible
    block = np.zeros((dim, dim), dtype=complex)
    block[:rank, :rank] = a
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    v, _ = np.linalg.qr(g)
    return v @ block @ v.conj().T


def embedded_nilpotent(rng, dim):
    block = np.zeros((dim, dim), dtype=complex)
    block[0, 1] = 1.0
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    v, _ = np.linalg.qr(g)
    return v @ block @ v.conj().T


class TestIsEp:
    def test_hermitian_diagonal(self, tol):
        assert is_ep(np.diag([1.0, 0.0]), tol)

    def test_nilpotent_cell(self, tol):
        assert not is_ep([[0, 1], [0, 0]], tol)

    def test_embedded_invertible_corner(self, rng, tol):
        m = embedded_ep(rng, 5, 3)
        assert is_ep(m, tol)

    def test_adjoint_symmetry(self, rng, tol):
        for dim, builder in ((4, embedded_ep), (4, None)):
            m = builder(rng, dim, 2) if builder else embedded_nilpotent(rng, dim)
            assert is_ep(m, tol) == is_ep(adjoint(m), tol)

    def test_rejects_non_square(self, tol):
        with pytest.raises(NotSquare):
            is_ep(np.ones((2, 3)), tol)


class TestIsHypoEp:
    def test_hermitian_diagonal(self, tol):
        assert is_hypo_ep(np.diag([2.0, -1.0, 0.0]), tol)

    def test_nilpotent_cell(self, tol):
        assert not is_hypo_ep([[0, 1], [0, 0]], tol)

    def test_collapses_to_ep_in_finite_dimension(self, rng, tol):
        candidates = [
            embedded_ep(rng, 5, 3),
            embedded_nilpotent(rng, 5),
            rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)),
            np.zeros((3, 3)),
            np.diag([1.0, 0.0, 2.0]),
        ]
        for m in candidates:
            assert is_hypo_ep(m, tol) == is_ep(m, tol)


class TestIsNormal:
    def test_rotation_is_normal(self, tol):
        assert is_normal([[0, -1], [1, 0]], tol)

    def test_nilpotent_is_not(self, tol):
        assert not is_normal([[0, 1], [0, 0]], tol)

    def test_random_hermitian_is_normal(self, rng, tol):
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert is_normal(a + adjoint(a), tol)


class TestClassify:
    def test_identity(self, tol):
        rep = classify(np.eye(3), tol)
        assert rep.is_ep and rep.is_hypo_ep and rep.is_normal
        assert rep.rank == 3 and rep.dim == 3
        assert rep.gamma == pytest.approx(1.0)
        assert rep.spectral_radius == pytest.approx(1.0)
        assert rep.commutator_residual <= 1e-14
        assert rep.range_gap <= 1e-14
        assert not rep.zero_operator

    def test_nilpotent_cell(self, tol):
        rep = classify([[0, 1], [0, 0]], tol)
        assert not rep.is_ep and not rep.is_hypo_ep and not rep.is_normal
        assert rep.gamma == pytest.approx(1.0)
        assert rep.spectral_radius <= 1e-12
        assert rep.rank == 1
        assert rep.commutator_residual == pytest.approx(1.0, abs=1e-12)
        assert rep.range_gap == pytest.approx(1.0, abs=1e-12)

    def test_integer_diagonal_truncation(self, tol):
        n = 6
        rep = classify(np.diag(np.arange(1.0, n + 1)), tol)
        assert rep.is_ep and rep.is_normal
        assert rep.gamma == pytest.approx(1.0)
        assert rep.spectral_radius == pytest.approx(float(n))
        assert rep.rank == n

    def test_zero_operator_flagged(self, tol):
        rep = classify(np.zeros((3, 3)), tol)
        assert rep.zero_operator
        assert rep.gamma == 0.0
        assert rep.is_ep  # the zero matrix has equal (trivial) range and adjoint range

    def test_rejects_non_square(self, tol):
        with pytest.raises(NotSquare):
            classify(np.ones((3, 2)), tol)

    def test_report_internal_consistency(self, rng, tol):
        for m in (embedded_ep(rng, 6, 4), embedded_nilpotent(rng, 6)):
            rep = classify(m, tol)
            assert rep.is_ep == (rep.commutator_residual <= tol.eq_atol)
            assert rep.is_ep == (rep.range_gap <= 2 * tol.eq_atol)
            if rep.is_ep:
                assert rep.is_hypo_ep
            if rep.is_normal:
                assert rep.is_ep


class TestTheoremLevelInvariants:
    def test_commutator_equivalence_both_directions(self, rng, tol):
        for _ in range(10):
            ep_m = embedded_ep(rng, 5, 3)
            bad_m = embedded_nilpotent(rng, 5)
            assert classify(ep_m, tol).commutator_residual <= tol.eq_atol
            assert classify(bad_m, tol).commutator_residual > tol.eq_atol

    def test_ep_range_equals_carrier(self, rng, tol):
        m = embedded_ep(rng, 6, 3)
        assert subspace_eq(range_basis(m, tol), carrier_basis(m, tol), tol)

    def test_gamma_vs_radius_needs_ep(self, rng, tol):
        # nilpotent negative control: gamma exceeds the spectral radius
        rep = classify([[0, 1], [0, 0]], tol)
        assert rep.gamma > rep.spectral_radius
        # EP instances respect the inequality
        for _ in range(5):
            rep = classify(embedded_ep(rng, 5, 3), tol)
            assert rep.is_ep
            assert rep.gamma <= rep.spectral_radius + 1e-10
