"""EP / hypo-EP / normal predicates and the consolidated per-matrix report.

A matrix is EP when its range coincides with the range of its adjoint; in
that case its pseudoinverse commutes with it.  Both facts are computed here
from one shared SVD (the adjoint's range is spanned by the right singular
vectors), and the commutator residual is reported independently so that
divergence at tolerance boundaries is visible rather than hidden.

EP-ness is defined for endomorphisms only: non-square input is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    SvdFactorization,
    ToleranceConfig,
    as_matrix,
    operator_norm,
    require_square,
    svd,
)
from .pinv import spectral_radius
from .subspace import (
    OrthonormalBasis,
    inclusion_residual,
    projector_gap,
)


@dataclass(frozen=True)
class ClassificationReport:
    """Verdicts and diagnostics for one square matrix.

    ``commutator_residual`` is ||M+ M - M M+|| and ``range_gap`` is the
    projector distance between the ranges of M and M*; either one near zero
    signals EP-ness, and the two are computed by different routes on purpose.
    """

    dim: int
    rank: int
    is_ep: bool
    is_hypo_ep: bool
    is_normal: bool
    gamma: float
    spectral_radius: float
    commutator_residual: float
    range_gap: float
    zero_operator: bool


def _range_and_corange(fact: SvdFactorization) -> tuple[OrthonormalBasis, OrthonormalBasis]:
    """Range of M and range of M* from the same factorization.

    M = U S V* gives M* = V S U*, so the right singular vectors above the
    cutoff span the adjoint's range; a single rank decision covers both.
    """
    r = fact.numerical_rank
    return (
        OrthonormalBasis(fact.rows, fact.left_vectors[:, :r].copy()),
        OrthonormalBasis(fact.cols, fact.right_vectors[:, :r].copy()),
    )


def is_ep(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff range(M) equals range(M*).

    The closed-range requirement in the operator-theoretic definition is
    automatic in finite dimension and therefore not a separate check.
    """
    m = require_square(as_matrix(matrix))
    rng, corng = _range_and_corange(svd(m, tol))
    return (
        inclusion_residual(rng, corng) <= tol.eq_atol
        and inclusion_residual(corng, rng) <= tol.eq_atol
    )


def is_hypo_ep(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff range(M) is contained in range(M*).

    In finite dimension equal ranks force the inclusion into equality, so
    this agrees with is_ep on every matrix; both are exposed because the
    operator-theoretic notions differ.
    """
    m = require_square(as_matrix(matrix))
    rng, corng = _range_and_corange(svd(m, tol))
    return inclusion_residual(rng, corng) <= tol.eq_atol


def is_normal(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff M M* - M* M vanishes within eq_atol * (1 + ||M||^2)."""
    m = require_square(as_matrix(matrix))
    madj = m.conj().T
    residual = float(np.linalg.norm(m @ madj - madj @ m, 2))
    norm = operator_norm(m)
    return residual <= tol.eq_atol * (1.0 + norm * norm)


def classify(matrix, tol: ToleranceConfig = DEFAULT_TOL) -> ClassificationReport:
    """Full classification from one shared factorization.

    gamma is the smallest singular value above the cutoff (0.0 for the zero
    matrix, with zero_operator set), and the spectral radius comes from the
    eigenvalue kernel so the two diagnostics stay independent.
    """
    m = require_square(as_matrix(matrix))
    fact = svd(m, tol)
    r = fact.numerical_rank
    dim = m.shape[0]

    rng, corng = _range_and_corange(fact)
    fwd = inclusion_residual(rng, corng)
    bwd = inclusion_residual(corng, rng)
    ep = fwd <= tol.eq_atol and bwd <= tol.eq_atol
    hypo = fwd <= tol.eq_atol

    gamma = float(fact.singular_values[r - 1]) if r > 0 else 0.0
    if r > 0:
        inv_sigma = 1.0 / fact.singular_values[:r]
        mp = (fact.right_vectors[:, :r] * inv_sigma) @ fact.left_vectors[:, :r].conj().T
    else:
        mp = np.zeros_like(m)
    commutator = float(np.linalg.norm(mp @ m - m @ mp, 2))

    return ClassificationReport(
        dim=dim,
        rank=r,
        is_ep=ep,
        is_hypo_ep=hypo,
        is_normal=is_normal(m, tol),
        gamma=gamma,
        spectral_radius=spectral_radius(m, tol),
        commutator_residual=commutator,
        range_gap=projector_gap(rng, corng),
        zero_operator=r == 0,
    )
