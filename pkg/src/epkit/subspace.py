"""Orthonormal bases, orthogonal projectors, and subspace comparisons.

Subspaces here always arise from one shared SVD per matrix, which keeps the
range / null / carrier bases mutually consistent: a single rank decision
feeds all three.  Inclusion is decided by the residual ||(I - P_B) V_A||,
which is cheap and directly bounds the projector distance; principal angles
are available as a diagnostic only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import subspace_angles

from .core import DEFAULT_TOL, SvdFactorization, ToleranceConfig, as_matrix, svd
from .errors import DimensionMismatch


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """Columns of ``vectors`` form an orthonormal basis of a subspace.

    ``vectors`` has shape (ambient_dim, k); k = 0 encodes the zero subspace.
    """

    ambient_dim: int
    vectors: np.ndarray

    def __post_init__(self) -> None:
        if self.vectors.ndim != 2 or self.vectors.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f"basis vectors of shape {self.vectors.shape} do not sit in "
                f"ambient dimension {self.ambient_dim}"
            )

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def orthonormality_residual(self) -> float:
        """||V* V - I||, which should be at roundoff level for valid bases."""
        if self.dim == 0:
            return 0.0
        gram = self.vectors.conj().T @ self.vectors
        return float(np.linalg.norm(gram - np.eye(self.dim), 2))


@dataclass(frozen=True, eq=False)
class Projector:
    """Orthogonal projector: idempotent and self-adjoint within eq_atol."""

    matrix: np.ndarray

    def idempotency_residual(self) -> float:
        return float(np.linalg.norm(self.matrix @ self.matrix - self.matrix, 2))

    def selfadjointness_residual(self) -> float:
        return float(np.linalg.norm(self.matrix - self.matrix.conj().T, 2))


def range_basis_of(fact: SvdFactorization) -> OrthonormalBasis:
    return OrthonormalBasis(fact.rows, fact.range_vectors())


def null_basis_of(fact: SvdFactorization) -> OrthonormalBasis:
    return OrthonormalBasis(fact.cols, fact.null_vectors())


def carrier_basis_of(fact: SvdFactorization) -> OrthonormalBasis:
    return OrthonormalBasis(fact.cols, fact.carrier_vectors())


def left_null_basis_of(fact: SvdFactorization) -> OrthonormalBasis:
    return OrthonormalBasis(fact.rows, fact.left_null_vectors())


def range_basis(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis of the range (left singular vectors above cutoff)."""
    return range_basis_of(svd(matrix, tol))


def null_basis(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis of the null space (right singular vectors at/below cutoff)."""
    return null_basis_of(svd(matrix, tol))


def carrier_basis(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis of the carrier, the orthocomplement of the null space."""
    return carrier_basis_of(svd(matrix, tol))


def projector(basis: OrthonormalBasis) -> Projector:
    """Orthogonal projector P = V V* onto the basis span."""
    v = basis.vectors
    if basis.dim == 0:
        return Projector(np.zeros((basis.ambient_dim, basis.ambient_dim), dtype=np.complex128))
    return Projector(v @ v.conj().T)


def inclusion_residual(a: OrthonormalBasis, b: OrthonormalBasis) -> float:
    """||(I - P_B) V_A||: 0 iff span(A) is contained in span(B)."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    if a.dim == 0:
        return 0.0
    residual = a.vectors - b.vectors @ (b.vectors.conj().T @ a.vectors)
    return float(np.linalg.norm(residual, 2))


def subspace_leq(
    a: OrthonormalBasis, b: OrthonormalBasis, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """True iff span(A) is contained in span(B) within eq_atol.

    The zero subspace is contained in everything.
    """
    return inclusion_residual(a, b) <= tol.eq_atol


def subspace_eq(
    a: OrthonormalBasis, b: OrthonormalBasis, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """True iff the spans coincide (inclusion both ways)."""
    return subspace_leq(a, b, tol) and subspace_leq(b, a, tol)


def projector_gap(a: OrthonormalBasis, b: OrthonormalBasis) -> float:
    """||P_A - P_B||, the projector distance between the two spans."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    return float(np.linalg.norm(projector(a).matrix - projector(b).matrix, 2))


def principal_angles(a: OrthonormalBasis, b: OrthonormalBasis) -> np.ndarray:
    """Principal angles between the spans, for diagnostics in reports only."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    if a.dim == 0 or b.dim == 0:
        return np.zeros(0)
    return subspace_angles(as_matrix(a.vectors), as_matrix(b.vectors))
