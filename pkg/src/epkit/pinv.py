"""Moore-Penrose pseudoinverse and the operator calculus built on it.

The pseudoinverse is computed spectrally from the shared SVD (never via
normal equations): singular values above the rank cutoff are inverted and
the rest annihilated, which realizes "invert on the carrier, kill the
orthocomplement of the range" exactly.  The same factorization also yields
the polar decomposition, fractional powers of the modulus |M| = (M*M)^(1/2),
the reduced minimum modulus, and the spectral radius.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_matrix,
    eigenvalues,
    hermitian_eig,
    operator_norm,
    require_square,
    svd,
)
from .errors import DimensionMismatch, InvalidExponent
from .subspace import (
    carrier_basis_of,
    null_basis_of,
    projector,
    projector_gap,
    range_basis_of,
)


def pseudoinverse(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse via the SVD, inverting only sigma above cutoff.

    Satisfies the four Penrose identities at roundoff level for reasonably
    conditioned input, and pseudoinverse(pseudoinverse(M)) reproduces M.
    The zero matrix maps to the zero matrix of transposed shape.
    """
    fact = svd(as_matrix(matrix), tol)
    r = fact.numerical_rank
    if r == 0:
        return np.zeros((fact.cols, fact.rows), dtype=np.complex128)
    inv_sigma = 1.0 / fact.singular_values[:r]
    return (fact.right_vectors[:, :r] * inv_sigma) @ fact.left_vectors[:, :r].conj().T


def penrose_residuals(matrix, candidate) -> dict[str, float]:
    """Residual norms of the four Penrose identities for candidate inverse X.

    Keys: "mxm" for MXM - M, "xmx" for XMX - X, "mx_hermitian" for
    MX - (MX)*, "xm_hermitian" for XM - (XM)*.
    """
    m = as_matrix(matrix)
    x = as_matrix(candidate)
    if x.shape != (m.shape[1], m.shape[0]):
        raise DimensionMismatch(
            f"candidate inverse of shape {x.shape} does not match matrix of shape {m.shape}"
        )
    mx = m @ x
    xm = x @ m
    return {
        "mxm": float(np.linalg.norm(mx @ m - m, 2)),
        "xmx": float(np.linalg.norm(xm @ x - x, 2)),
        "mx_hermitian": float(np.linalg.norm(mx - mx.conj().T, 2)),
        "xm_hermitian": float(np.linalg.norm(xm - xm.conj().T, 2)),
    }


@dataclass(frozen=True)
class MpIdentityReport:
    """Residuals of the classical pseudoinverse identities for one matrix.

    ``passed`` is True iff every residual is at most
    eq_atol * (1 + ||M|| + ||M+||).
    """

    residuals: dict[str, float]
    passed: bool


def mp_identity_suite(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> MpIdentityReport:
    """Evaluate the pseudoinverse identity suite, each side independently.

    Subspace identities are reported as projector gaps; operator identities
    as spectral-norm residuals.  Every pseudoinverse on the right-hand sides
    is recomputed from a fresh factorization of its own argument, so the two
    sides of each identity never share intermediate results.

    Domain statements about the pseudoinverse (closedness, its domain being
    the range plus its orthocomplement) degenerate to the full space in
    finite dimension and are therefore not separate checks here.
    """
    m = as_matrix(matrix)
    mp = pseudoinverse(m, tol)
    madj = adjoint(m)

    fact_m = svd(m, tol)
    fact_mp = svd(mp, tol)
    fact_madj = svd(madj, tol)
    fact_madj_pinv = svd(pseudoinverse(madj, tol), tol)

    carrier_proj = projector(carrier_basis_of(fact_m)).matrix
    range_proj = projector(range_basis_of(fact_m)).matrix

    residuals = {
        # N(M+) = N(M*)
        "null_pinv_eq_null_adjoint": projector_gap(
            null_basis_of(fact_mp), null_basis_of(fact_madj)
        ),
        # R(M+) = carrier of M
        "range_pinv_eq_carrier": projector_gap(
            range_basis_of(fact_mp), carrier_basis_of(fact_m)
        ),
        # M+ M is the orthogonal projector onto the carrier
        "pinv_m_is_carrier_projector": float(
            np.linalg.norm(mp @ m - carrier_proj, 2)
        ),
        # M M+ is the orthogonal projector onto the range
        "m_pinv_is_range_projector": float(np.linalg.norm(m @ mp - range_proj, 2)),
        # (M+)+ = M
        "double_pinv": float(np.linalg.norm(pseudoinverse(mp, tol) - m, 2)),
        # (M*)+ = (M+)*
        "adjoint_pinv_swap": float(
            np.linalg.norm(pseudoinverse(madj, tol) - adjoint(mp), 2)
        ),
        # N((M*)+) = N(M)
        "null_adjoint_pinv_eq_null": projector_gap(
            null_basis_of(fact_madj_pinv), null_basis_of(fact_m)
        ),
        # (M*M)+ = M+ (M*)+
        "gram_pinv_factorizes": float(
            np.linalg.norm(
                pseudoinverse(madj @ m, tol) - mp @ pseudoinverse(madj, tol), 2
            )
        ),
        # (MM*)+ = (M*)+ M+
        "cogram_pinv_factorizes": float(
            np.linalg.norm(
                pseudoinverse(m @ madj, tol) - pseudoinverse(madj, tol) @ mp, 2
            )
        ),
    }
    scale = 1.0 + operator_norm(m) + operator_norm(mp)
    passed = all(value <= tol.eq_atol * scale for value in residuals.values())
    return MpIdentityReport(residuals=residuals, passed=passed)


def reduced_min_modulus(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Smallest singular value above the rank cutoff; 0.0 for the zero matrix.

    For nonzero M this equals 1 / ||pseudoinverse(M)||.  The zero-matrix case
    is flagged separately in classification reports (zero_operator) rather
    than through a sentinel value here.
    """
    fact = svd(as_matrix(matrix), tol)
    if fact.numerical_rank == 0:
        return 0.0
    return float(fact.singular_values[fact.numerical_rank - 1])


def spectral_radius(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Largest eigenvalue modulus of a square matrix."""
    vals = eigenvalues(matrix, tol)
    return float(np.max(np.abs(vals)))


@dataclass(frozen=True, eq=False)
class PolarFactors:
    """Polar decomposition M = U |M| with a partial isometry U.

    ``isometry_part`` annihilates the null space of M (so U*U is the
    projector onto the carrier), and ``modulus_part`` is the Hermitian
    positive-semidefinite square root of M*M.
    """

    isometry_part: np.ndarray
    modulus_part: np.ndarray


def polar_decomposition(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> PolarFactors:
    """Polar factors from the SVD: |M| = V S V*, U = U_r V_r*.

    The partial isometry keeps only singular directions above the cutoff, so
    N(U) = N(M); the alternative unitary completion is deliberately not used.
    """
    m = require_square(as_matrix(matrix))
    fact = svd(m, tol)
    r = fact.numerical_rank
    v = fact.right_vectors
    modulus = (v * fact.singular_values) @ v.conj().T
    modulus = (modulus + modulus.conj().T) / 2.0
    if r == 0:
        isometry = np.zeros_like(m)
    else:
        isometry = fact.left_vectors[:, :r] @ v[:, :r].conj().T
    return PolarFactors(isometry_part=isometry, modulus_part=modulus)


def fractional_abs_power(
    matrix, alpha: float, tol: ToleranceConfig = DEFAULT_TOL
) -> np.ndarray:
    """|M|^alpha for alpha > 0, via the Hermitian eigendecomposition of |M|.

    Eigenvalues of |M| at or below the rank cutoff are clamped to exactly 0
    before the power is taken (for alpha < 1 a sub-cutoff roundoff eigenvalue
    would otherwise be amplified, eps**alpha >> eps, and corrupt the range);
    |M|^1 reproduces |M| within tolerance.
    """
    if not alpha > 0.0:
        raise InvalidExponent(f"exponent must be positive, got {alpha}")
    modulus = polar_decomposition(matrix, tol).modulus_part
    w, q = hermitian_eig(modulus, tol)
    cutoff = tol.rank_rtol * max(float(w[0]), 0.0)
    powered = np.where(w > cutoff, np.clip(w, 0.0, None), 0.0) ** alpha
    result = (q * powered) @ q.conj().T
    return (result + result.conj().T) / 2.0


def direct_sum(a, b) -> np.ndarray:
    """Block-diagonal embedding of two (possibly rectangular) matrices.

    The pseudoinverse distributes over the blocks and the reduced minimum
    modulus of the sum is the minimum of the blocks' values when both are
    nonzero.
    """
    am = as_matrix(a)
    bm = as_matrix(b)
    out = np.zeros(
        (am.shape[0] + bm.shape[0], am.shape[1] + bm.shape[1]), dtype=np.complex128
    )
    out[: am.shape[0], : am.shape[1]] = am
    out[am.shape[0] :, am.shape[1] :] = bm
    return out
