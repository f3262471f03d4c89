"""Dense complex-matrix kernels: adjoint, products, SVD, eigendecompositions.

Everything downstream (subspaces, pseudoinverses, classification, theorem
verifiers) funnels through the factorizations in this module so that rank
decisions stay mutually consistent.  LAPACK, via numpy, supplies the
similarity-reduction iterations; the test suite pins accuracy against
independent characteristic-polynomial and residual oracles.

All functions are pure: inputs are validated, never mutated, and returned
arrays are fresh.  Values are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    InvalidDimension,
    NotHermitian,
    NotSquare,
)

# Desk-scale verifier, not an HPC kernel.
MAX_DIM = 256


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical policy shared by every operation.

    Parameters
    ----------
    rank_rtol : float
        Relative singular-value cutoff: sigma_i counts toward the numerical
        rank iff sigma_i > rank_rtol * sigma_1.  This is the finite-precision
        surrogate for "the range is closed with known rank".
    eq_atol : float
        Absolute residual tolerance for matrix, projector and subspace
        equality tests.
    """

    rank_rtol: float = 1e-10
    eq_atol: float = 1e-8

    def __post_init__(self) -> None:
        if not 0.0 < self.rank_rtol < 1.0:
            raise ValueError(f"rank_rtol must lie in (0, 1), got {self.rank_rtol}")
        if not 0.0 < self.eq_atol < 1.0:
            raise ValueError(f"eq_atol must lie in (0, 1), got {self.eq_atol}")


DEFAULT_TOL = ToleranceConfig()


def as_matrix(values) -> np.ndarray:
    """Validate and normalize input into a fresh complex128 2-D array.

    Rejects non-2-D input, empty axes, dimensions beyond MAX_DIM, and
    non-finite entries.
    """
    m = np.array(values, dtype=np.complex128, copy=True)
    if m.ndim != 2:
        raise InvalidDimension(f"expected a 2-D matrix, got ndim={m.ndim}")
    rows, cols = m.shape
    if rows < 1 or cols < 1:
        raise InvalidDimension(f"matrix axes must be positive, got {m.shape}")
    if rows > MAX_DIM or cols > MAX_DIM:
        raise InvalidDimension(
            f"matrix of shape {m.shape} exceeds the {MAX_DIM}x{MAX_DIM} cap"
        )
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class SvdFactorization:
    """Full singular value decomposition with a thresholded numerical rank.

    ``left_vectors`` is m x m unitary, ``right_vectors`` is n x n unitary,
    ``singular_values`` holds the min(m, n) singular values sorted
    non-increasing, and ``numerical_rank`` counts those above
    rank_rtol * sigma_1.  Column blocks of the two unitary factors give
    orthonormal bases of the four fundamental subspaces.
    """

    left_vectors: np.ndarray
    singular_values: np.ndarray
    right_vectors: np.ndarray
    numerical_rank: int

    @property
    def rows(self) -> int:
        return self.left_vectors.shape[0]

    @property
    def cols(self) -> int:
        return self.right_vectors.shape[0]

    def range_vectors(self) -> np.ndarray:
        """Orthonormal columns spanning the range (column space)."""
        return self.left_vectors[:, : self.numerical_rank].copy()

    def null_vectors(self) -> np.ndarray:
        """Orthonormal columns spanning the null space."""
        return self.right_vectors[:, self.numerical_rank :].copy()

    def carrier_vectors(self) -> np.ndarray:
        """Orthonormal columns spanning the carrier (orthocomplement of the null space)."""
        return self.right_vectors[:, : self.numerical_rank].copy()

    def left_null_vectors(self) -> np.ndarray:
        """Orthonormal columns spanning the orthocomplement of the range."""
        return self.left_vectors[:, self.numerical_rank :].copy()


def adjoint(matrix) -> np.ndarray:
    """Conjugate transpose."""
    m = as_matrix(matrix)
    return m.conj().T.copy()


def multiply(a, b) -> np.ndarray:
    """Matrix product, with an explicit shape check."""
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape[1] != bm.shape[0]:
        raise DimensionMismatch(
            f"cannot multiply {am.shape} by {bm.shape}: inner dimensions differ"
        )
    return am @ bm


def svd(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> SvdFactorization:
    """Full SVD with rank thresholded at rank_rtol * sigma_1.

    The zero matrix yields numerical_rank 0 (empty range basis).  Raises
    ConvergenceFailure if the underlying iteration does not converge.
    """
    m = as_matrix(matrix)
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge for shape {m.shape}") from exc
    if s.size and s[0] > 0.0:
        rank = int(np.count_nonzero(s > tol.rank_rtol * s[0]))
    else:
        rank = 0
    return SvdFactorization(
        left_vectors=u,
        singular_values=s,
        right_vectors=vh.conj().T,
        numerical_rank=rank,
    )


def hermitian_eig(
    matrix, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues sorted
    non-increasing and unitary eigenvector columns, so that
    H = Q diag(w) Q*.  Raises NotHermitian when the input is not square or
    departs from H = H* by more than eq_atol * (1 + ||H||).
    """
    h = as_matrix(matrix)
    if h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square Hermitian matrix, got shape {h.shape}")
    scale = 1.0 + operator_norm(h)
    if operator_norm(h - h.conj().T) > tol.eq_atol * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    try:
        w, q = np.linalg.eigh((h + h.conj().T) / 2.0)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(
            f"Hermitian eigendecomposition did not converge for shape {h.shape}"
        ) from exc
    order = np.argsort(-w, kind="stable")
    return w[order].copy(), q[:, order].copy()


def eigenvalues(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """All eigenvalues of a square matrix, in a canonical deterministic order.

    Sorted by descending real part, then descending imaginary part; the
    result is a multiset, so only the multiset is contractual.
    """
    m = require_square(as_matrix(matrix))
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(
            f"eigenvalue iteration did not converge for shape {m.shape}"
        ) from exc
    order = np.lexsort((-vals.imag, -vals.real))
    return vals[order].copy()


def operator_norm(matrix) -> float:
    """Spectral norm (largest singular value); 0.0 for the zero matrix."""
    m = as_matrix(matrix)
    return float(np.linalg.norm(m, 2))
