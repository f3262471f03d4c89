"""Seeded generators of structured matrices and one verifier per theorem id.

Every verifier runs a batch of independently generated trials and folds the
outcomes into a TheoremVerdict.  Determinism is strict: trial t of a run with
master seed s draws from a generator seeded by (s, verifier index, t), so
results do not depend on execution order, and rerunning with the same seed
reproduces the verdict bit for bit.

Equivalence-style verifiers exercise both directions: accepting instances
from the matching family and rejecting instances from a control family.  A
trial fails when a boolean claim is violated or a residual exceeds ten times
eq_atol at its natural scale; residuals between eq_atol and that threshold
are counted as warnings, not failures.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import (
    DEFAULT_TOL,
    MAX_DIM,
    SvdFactorization,
    ToleranceConfig,
    adjoint,
    as_matrix,
    eigenvalues,
    operator_norm,
    svd,
)
from .errors import (
    DimensionMismatch,
    GenerationError,
    InvalidSpec,
    NotHermitian,
    UnknownTheorem,
)
from .classify import classify, is_ep, is_hypo_ep
from .models import harmonic_truncation
from .pinv import (
    direct_sum,
    fractional_abs_power,
    polar_decomposition,
    pseudoinverse,
    reduced_min_modulus,
)
from .serialize import matrix_to_payload
from .subspace import (
    OrthonormalBasis,
    inclusion_residual,
    null_basis_of,
    projector_gap,
    range_basis_of,
)

GENERATOR_FAMILIES = (
    "ep",
    "non_ep",
    "normal_ep",
    "commuting_pair",
    "perturbation_pair",
    "product_pair",
    "sequence",
)

SEQUENCE_LENGTH = 50
EP_MEMBERSHIP_DELTA = 0.1
FRACTIONAL_ALPHA_GRID = (0.25, 0.5, 1.0, 1.5, 2.0, 3.0)

# Test hook: when enabled, ep-family generation is replaced (after its
# self-validation) by a canonical non-EP matrix, so downstream verifiers
# produce genuine counterexamples.  Used by the CLI failure-path contract.
_corrupt_ep_generation = False


def set_generation_corruption(enabled: bool) -> None:
    global _corrupt_ep_generation
    _corrupt_ep_generation = bool(enabled)


@dataclass(frozen=True)
class GeneratorSpec:
    """Shape, rank, conditioning, seed, and family of generated instances."""

    dim: int
    rank: int
    condition_bound: float = 100.0
    seed: int = 0
    family: str = "ep"

    def __post_init__(self) -> None:
        if self.family not in GENERATOR_FAMILIES:
            raise InvalidSpec(
                f"unknown family {self.family!r}; known: {', '.join(GENERATOR_FAMILIES)}"
            )
        if not 1 <= self.dim <= MAX_DIM:
            raise InvalidSpec(f"dim must be in [1, {MAX_DIM}], got {self.dim}")
        if self.rank < 0 or self.rank > self.dim:
            raise InvalidSpec(f"rank {self.rank} outside [0, dim={self.dim}]")
        if self.condition_bound < 1.0:
            raise InvalidSpec(f"condition_bound must be >= 1, got {self.condition_bound}")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must fit in an unsigned 64-bit integer")
        if self.family == "non_ep" and not 1 <= self.rank <= self.dim - 1:
            raise InvalidSpec(
                "non_ep family needs 1 <= rank <= dim - 1: a full-rank square "
                "matrix has equal range and adjoint range"
            )


@dataclass(frozen=True)
class PerturbationSpec:
    """Dominance constants for perturbation pairs: ||Sx|| <= a ||Tx|| etc.

    Both constants are kept at most 0.9; behaviour at the a -> 1 boundary is
    deliberately out of scope.
    """

    a: float = 0.5
    b: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.a <= 0.9 or not 0.0 < self.b <= 0.9:
            raise InvalidSpec(f"perturbation constants must lie in (0, 0.9], got a={self.a}, b={self.b}")


@dataclass(frozen=True, eq=False)
class MatrixSequence:
    """A finite matrix sequence together with its declared limit."""

    terms: tuple[np.ndarray, ...]
    limit: np.ndarray


@dataclass(frozen=True)
class TheoremVerdict:
    """Aggregated outcome of one verifier over a batch of trials."""

    theorem_id: str
    trials: int
    failures: int
    worst_residual: float
    counterexample: dict | None
    elapsed_ms: int
    warnings: int = 0
    notes: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.failures == 0) != (self.counterexample is None):
            raise ValueError("counterexample must be present exactly when failures > 0")


# ---------------------------------------------------------------------------
# Random building blocks
# ---------------------------------------------------------------------------


def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    phases = np.where(np.abs(d) > 0, d / np.abs(np.where(np.abs(d) > 0, d, 1.0)), 1.0)
    return q * phases.conj()


def _conditioned_invertible(
    rng: np.random.Generator, n: int, condition_bound: float
) -> np.ndarray:
    """Random invertible n x n matrix with condition number <= condition_bound."""
    smax = rng.uniform(0.5, 2.0)
    cond = float(np.exp(rng.uniform(0.0, np.log(max(condition_bound, 1.0)))))
    if n == 1:
        s = np.array([smax])
    else:
        interior = np.exp(rng.uniform(np.log(smax / cond), np.log(smax), size=n - 2))
        s = np.concatenate(([smax], np.sort(interior)[::-1], [smax / cond]))
    u = _haar_unitary(rng, n)
    v = _haar_unitary(rng, n)
    return (u * s) @ v.conj().T


def _embed_conjugated(rng: np.random.Generator, dim: int, block: np.ndarray) -> np.ndarray:
    """V blockdiag(block, 0) V* for a fresh Haar-random unitary V."""
    k = block.shape[0]
    b = np.zeros((dim, dim), dtype=np.complex128)
    b[:k, :k] = block
    v = _haar_unitary(rng, dim)
    return v @ b @ v.conj().T


def _canonical_non_ep(dim: int) -> np.ndarray:
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[0, min(1, dim - 1)] = 1.0
    return m


def _gen_ep(rng, dim, rank, cond, tol) -> np.ndarray:
    if rank == 0:
        return np.zeros((dim, dim), dtype=np.complex128)
    block = _conditioned_invertible(rng, rank, cond)
    m = _embed_conjugated(rng, dim, block)
    if not is_ep(m, tol):
        raise GenerationError("ep family self-validation failed")
    if _corrupt_ep_generation:
        return _canonical_non_ep(dim)
    return m


def _gen_non_ep(rng, dim, rank, cond, tol) -> np.ndarray:
    if not 1 <= rank <= dim - 1:
        raise InvalidSpec("non_ep family needs 1 <= rank <= dim - 1")
    block = np.zeros((rank + 1, rank + 1), dtype=np.complex128)
    block[0, 1] = rng.uniform(0.5, 2.0)
    if rank > 1:
        block[2:, 2:] = _conditioned_invertible(rng, rank - 1, cond)
    m = _embed_conjugated(rng, dim, block)
    if is_ep(m, tol):
        raise GenerationError("non_ep family self-validation failed")
    return m


def _gen_normal_ep(rng, dim, rank, cond, tol) -> np.ndarray:
    smax = rng.uniform(0.5, 2.0)
    mags = smax * np.exp(rng.uniform(-np.log(max(cond, 1.0)), 0.0, size=rank))
    phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=rank))
    lam = np.zeros(dim, dtype=np.complex128)
    lam[:rank] = mags * phases
    v = _haar_unitary(rng, dim)
    m = (v * lam) @ v.conj().T
    if not is_ep(m, tol):
        raise GenerationError("normal_ep family self-validation failed")
    if _corrupt_ep_generation:
        return _canonical_non_ep(dim)
    return m


def _random_poly_in(rng, m: np.ndarray, degree: int = 3) -> np.ndarray:
    coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    out = coeffs[0] * np.eye(m.shape[0], dtype=np.complex128)
    power = np.eye(m.shape[0], dtype=np.complex128)
    for c in coeffs[1:]:
        power = power @ m
        out = out + c * power
    return out


def _gen_commuting_pair(rng, dim, rank, cond, tol) -> tuple[np.ndarray, np.ndarray]:
    t = _gen_ep(rng, dim, rank, cond, tol)
    s = _random_poly_in(rng, t)
    scale = (1.0 + operator_norm(s)) * (1.0 + operator_norm(t))
    if float(np.linalg.norm(s @ t - t @ s, 2)) > 10.0 * tol.eq_atol * scale:
        raise GenerationError("commuting_pair self-validation failed")
    return t, s


def _gen_perturbation_pair(
    rng, dim, rank, cond, tol, pspec: PerturbationSpec, loose: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """EP base plus a dominated perturbation certified by psd_dominates.

    The scaled construction S = c T certifies both dominance hypotheses
    analytically; the loose construction draws a dense direction, confines
    it to map the carrier into the range, and shrinks it under the reduced
    minimum modulus.
    """
    t = _gen_ep(rng, dim, rank, cond, tol)
    bound = min(pspec.a, pspec.b)
    if not loose:
        c = bound * rng.uniform(0.2, 0.95) * np.exp(2j * np.pi * rng.uniform())
        s = c * t
    else:
        fact = svd(t, tol)
        r = fact.numerical_rank
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        p_range = fact.left_vectors[:, :r] @ fact.left_vectors[:, :r].conj().T
        p_carrier = fact.right_vectors[:, :r] @ fact.right_vectors[:, :r].conj().T
        confined = p_range @ g @ p_carrier
        gamma = float(fact.singular_values[r - 1]) if r else 0.0
        norm_confined = float(np.linalg.norm(confined, 2))
        eps = 0.8 * bound * gamma / max(norm_confined, 1e-300)
        s = eps * confined
    ta = adjoint(t)
    sa = adjoint(s)
    if not psd_dominates(pspec.a**2 * (ta @ t), sa @ s, tol) or not psd_dominates(
        pspec.b**2 * (t @ ta), s @ sa, tol
    ):
        raise GenerationError("perturbation_pair dominance certification failed")
    return t, s


def _gen_product_pair(rng, dim, rank, cond, tol) -> tuple[np.ndarray, np.ndarray]:
    s = _gen_ep(rng, dim, rank, cond, tol)
    t = _gen_ep(rng, dim, rank, cond, tol)
    return s, t


def _gen_sequence(rng, dim, rank, cond, tol) -> MatrixSequence:
    t = _gen_ep(rng, dim, rank, cond, tol)
    terms = tuple((1.0 + 1.0 / k) * t for k in range(1, SEQUENCE_LENGTH + 1))
    return MatrixSequence(terms=terms, limit=t)


def gen_matrix(
    spec: GeneratorSpec,
    perturbation: PerturbationSpec | None = None,
    tol: ToleranceConfig = DEFAULT_TOL,
):
    """Generate one instance of the spec's family, deterministically from its seed.

    Returns a matrix, a pair of matrices, or a MatrixSequence depending on
    the family.  Generated instances are self-validated at construction
    (EP instances must classify EP, non-EP instances must not, dominance
    certificates must hold); violations raise GenerationError.
    """
    rng = np.random.default_rng([spec.seed, 0xA5])
    pspec = perturbation if perturbation is not None else PerturbationSpec()
    d, r, c = spec.dim, spec.rank, spec.condition_bound
    if spec.family == "ep":
        return _gen_ep(rng, d, r, c, tol)
    if spec.family == "non_ep":
        return _gen_non_ep(rng, d, r, c, tol)
    if spec.family == "normal_ep":
        return _gen_normal_ep(rng, d, r, c, tol)
    if spec.family == "commuting_pair":
        return _gen_commuting_pair(rng, d, r, c, tol)
    if spec.family == "perturbation_pair":
        return _gen_perturbation_pair(rng, d, r, c, tol, pspec)
    if spec.family == "product_pair":
        return _gen_product_pair(rng, d, r, c, tol)
    return _gen_sequence(rng, d, r, c, tol)


def psd_dominates(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff A - B is positive semidefinite within eq_atol * (1 + ||A||).

    Both arguments must be Hermitian (within eq_atol) and of equal shape.
    This is the finite-dimensional dominance test behind the perturbation
    hypotheses ||Sx|| <= a ||Tx||.
    """
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"shapes differ: {am.shape} vs {bm.shape}")
    if am.shape[0] != am.shape[1]:
        raise NotHermitian("psd_dominates needs square Hermitian inputs")
    norm_a = operator_norm(am)
    for name, m in (("first", am), ("second", bm)):
        scale = 1.0 + operator_norm(m)
        if float(np.linalg.norm(m - m.conj().T, 2)) > tol.eq_atol * scale:
            raise NotHermitian(f"{name} argument is not Hermitian within tolerance")
    diff = am - bm
    diff = (diff + diff.conj().T) / 2.0
    w = np.linalg.eigvalsh(diff)
    return bool(w[0] >= -tol.eq_atol * (1.0 + norm_a))


# ---------------------------------------------------------------------------
# Verifier plumbing
# ---------------------------------------------------------------------------


@dataclass
class _Trial:
    ok: bool
    residual: float = 0.0
    warn: bool = False
    direction: str = "accept"
    payload: dict | None = None
    note: str | None = None


@dataclass
class _Ctx:
    spec: GeneratorSpec
    tol: ToleranceConfig
    pspec: PerturbationSpec
    details: dict = field(default_factory=dict)


def _norm2(x: np.ndarray) -> float:
    return float(np.linalg.norm(x, 2))


def _residual_trial(
    residual: float,
    scale: float,
    tol: ToleranceConfig,
    extra_ok: bool = True,
    direction: str = "accept",
    payload: dict | None = None,
    note: str | None = None,
) -> _Trial:
    fail_at = 10.0 * tol.eq_atol * scale
    ok = extra_ok and residual <= fail_at
    warn = ok and residual > tol.eq_atol * scale
    return _Trial(ok=ok, residual=float(residual), warn=warn, direction=direction,
                  payload=payload, note=note)


def _ctl_rank(spec: GeneratorSpec) -> int:
    return min(max(spec.rank, 1), spec.dim - 1)


def _gen_for(ctx: _Ctx, rng, family: str, rank: int | None = None, cond: float | None = None):
    spec = ctx.spec
    r = spec.rank if rank is None else rank
    c = spec.condition_bound if cond is None else min(cond, spec.condition_bound)
    if family == "ep":
        return _gen_ep(rng, spec.dim, r, c, ctx.tol)
    if family == "non_ep":
        return _gen_non_ep(rng, spec.dim, _ctl_rank(spec) if rank is None else rank, c, ctx.tol)
    if family == "normal_ep":
        return _gen_normal_ep(rng, spec.dim, r, c, ctx.tol)
    raise InvalidSpec(f"unsupported internal family {family!r}")


def _ep_from_fact(fact: SvdFactorization, tol: ToleranceConfig) -> bool:
    rng_b = OrthonormalBasis(fact.rows, fact.range_vectors())
    corng_b = OrthonormalBasis(fact.cols, fact.carrier_vectors())
    return (
        inclusion_residual(rng_b, corng_b) <= tol.eq_atol
        and inclusion_residual(corng_b, rng_b) <= tol.eq_atol
    )


def _multiset_gap(xs: np.ndarray, ys: np.ndarray) -> float:
    if xs.size != ys.size:
        raise DimensionMismatch("multisets must have equal cardinality")
    if xs.size == 0:
        return 0.0
    cost = np.abs(xs[:, None] - ys[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


# ---------------------------------------------------------------------------
# Individual theorem checkers
# ---------------------------------------------------------------------------


def _check_thm2_1(ctx: _Ctx, rng, t: int) -> _Trial:
    """EP iff the pseudoinverse commutes: range test vs commutator test."""
    family = "ep" if t % 2 == 0 else "non_ep"
    m = _gen_for(ctx, rng, family)
    rep = classify(m, ctx.tol)
    pred_comm = rep.commutator_residual <= ctx.tol.eq_atol
    expected = family == "ep"
    direction = "accept" if expected else "reject"
    if rep.is_ep != expected or pred_comm != expected:
        return _Trial(
            False, 1.0, direction=direction, payload={"T": m},
            note=(
                f"family={family}: is_ep={rep.is_ep}, "
                f"commutator_residual={rep.commutator_residual:.3e}"
            ),
        )
    if expected:
        scale = 1.0 + operator_norm(m) + (1.0 / rep.gamma if rep.gamma > 0 else 0.0)
        return _residual_trial(rep.commutator_residual, scale, ctx.tol, payload={"T": m})
    return _Trial(True, 0.0, direction="reject")


def _check_thm2_2(ctx: _Ctx, rng, t: int) -> _Trial:
    """Direct sums: EP iff both blocks EP; pinv and gamma distribute over blocks."""
    tol = ctx.tol
    accept = t % 2 == 0
    a = _gen_for(ctx, rng, "ep")
    b = _gen_for(ctx, rng, "ep" if accept else "non_ep")
    d = direct_sum(a, b)
    payload = {"A": a, "B": b}

    ep_d = is_ep(d, tol)
    dp = pseudoinverse(d, tol)
    block = direct_sum(pseudoinverse(a, tol), pseudoinverse(b, tol))
    pinv_resid = _norm2(dp - block)
    norm_scale = 1.0 + operator_norm(a) + operator_norm(b)
    pinv_scale = norm_scale + _norm2(block)

    gamma_a = reduced_min_modulus(a, tol)
    gamma_b = reduced_min_modulus(b, tol)
    gamma_ok = True
    gamma_resid = 0.0
    if gamma_a > 0.0 and gamma_b > 0.0:
        gamma_resid = abs(reduced_min_modulus(d, tol) - min(gamma_a, gamma_b))
        gamma_ok = gamma_resid <= 1e-12 * norm_scale

    if ep_d != accept:
        return _Trial(False, 1.0, direction="accept" if accept else "reject",
                      payload=payload, note=f"is_ep(A (+) B)={ep_d}, expected {accept}")
    return _residual_trial(
        pinv_resid, pinv_scale, tol, extra_ok=gamma_ok,
        direction="accept" if accept else "reject", payload=payload,
        note=None if gamma_ok else f"gamma law residual {gamma_resid:.3e}",
    )


def _check_thm2_3(ctx: _Ctx, rng, t: int) -> _Trial:
    """EP iff the polar isometry factor is EP."""
    family = "ep" if t % 2 == 0 else "non_ep"
    m = _gen_for(ctx, rng, family)
    u = polar_decomposition(m, ctx.tol).isometry_part
    rep_u = classify(u, ctx.tol)
    expected = family == "ep"
    if rep_u.is_ep != expected:
        return _Trial(False, 1.0, direction="accept" if expected else "reject",
                      payload={"T": m, "U": u},
                      note=f"is_ep(U)={rep_u.is_ep}, expected {expected}")
    if expected:
        return _residual_trial(rep_u.range_gap, 2.0, ctx.tol, payload={"T": m, "U": u})
    return _Trial(True, 0.0, direction="reject")


def _check_thm2_4(ctx: _Ctx, rng, t: int) -> _Trial:
    """EP iff range equals carrier (the invertible-corner block form)."""
    family = "ep" if t % 2 == 0 else "non_ep"
    m = _gen_for(ctx, rng, family)
    fact = svd(m, ctx.tol)
    rng_b = range_basis_of(fact)
    car_b = OrthonormalBasis(fact.cols, fact.carrier_vectors())
    cond = (
        inclusion_residual(rng_b, car_b) <= ctx.tol.eq_atol
        and inclusion_residual(car_b, rng_b) <= ctx.tol.eq_atol
    )
    ep = is_ep(m, ctx.tol)
    expected = family == "ep"
    if cond != expected or ep != expected:
        return _Trial(False, 1.0, direction="accept" if expected else "reject",
                      payload={"T": m},
                      note=f"range==carrier is {cond}, is_ep is {ep}, expected {expected}")
    if expected:
        return _residual_trial(projector_gap(rng_b, car_b), 1.0, ctx.tol, payload={"T": m})
    return _Trial(True, 0.0, direction="reject")


def _check_thm2_5(ctx: _Ctx, rng, t: int) -> _Trial:
    """For EP T: S commutes with T iff S commutes with the pseudoinverse."""
    tol = ctx.tol
    kind = t % 3
    if kind == 0:
        t_mat, s = _gen_commuting_pair(rng, ctx.spec.dim, ctx.spec.rank,
                                       ctx.spec.condition_bound, tol)
        tp = pseudoinverse(t_mat, tol)
        resid = _norm2(s @ tp - tp @ s)
        scale = (1.0 + operator_norm(s)) * (1.0 + _norm2(tp))
        return _residual_trial(resid, scale, tol, payload={"T": t_mat, "S": s})
    if kind == 1:
        t_mat = _gen_for(ctx, rng, "ep")
        fact = svd(t_mat, tol)
        r = fact.numerical_rank
        vr = fact.right_vectors[:, :r]
        vn = fact.right_vectors[:, r:]
        compressed = vr.conj().T @ t_mat @ vr
        s = vr @ _random_poly_in(rng, compressed) @ vr.conj().T
        if vn.shape[1] > 0:
            g = rng.standard_normal((vn.shape[1], vn.shape[1])) + 1j * rng.standard_normal(
                (vn.shape[1], vn.shape[1])
            )
            s = s + vn @ g @ vn.conj().T
        tp = pseudoinverse(t_mat, tol)
        premise = _norm2(s @ tp - tp @ s)
        conclusion = _norm2(s @ t_mat - t_mat @ s)
        scale = (1.0 + operator_norm(s)) * (1.0 + operator_norm(t_mat) + _norm2(tp))
        return _residual_trial(max(premise, conclusion), scale, tol,
                               payload={"T": t_mat, "S": s})
    t_mat = _gen_for(ctx, rng, "ep")
    tp = pseudoinverse(t_mat, tol)
    floor = 1e-3 * (1.0 + operator_norm(t_mat))
    s = None
    for _ in range(8):
        cand = rng.standard_normal(t_mat.shape) + 1j * rng.standard_normal(t_mat.shape)
        if _norm2(cand @ t_mat - t_mat @ cand) > floor * (1.0 + _norm2(cand)):
            s = cand
            break
    if s is None:
        raise GenerationError("could not draw a non-commuting control operator")
    ok = _norm2(s @ tp - tp @ s) > ctx.tol.eq_atol
    return _Trial(ok, 0.0 if ok else 1.0, direction="reject",
                  payload=None if ok else {"T": t_mat, "S": s},
                  note=None if ok else "non-commuting S commutes with the pseudoinverse")


def _check_thm2_6(ctx: _Ctx, rng, t: int) -> _Trial:
    """EP iff powers are EP with the same range (rank-preserving converse)."""
    tol = ctx.tol
    if t % 2 == 0:
        m = _gen_for(ctx, rng, "ep", cond=30.0)
        fact = svd(m, tol)
        base = range_basis_of(fact)
        worst = 0.0
        power = m
        for _ in (2, 3, 4):
            power = power @ m
            fact_n = svd(power, tol)
            if not _ep_from_fact(fact_n, tol):
                return _Trial(False, 1.0, payload={"T": m},
                              note="a power of an EP matrix failed the EP test")
            worst = max(worst, projector_gap(range_basis_of(fact_n), base))
        return _residual_trial(worst, 1.0, tol, payload={"T": m})
    m = _gen_for(ctx, rng, "non_ep", cond=30.0)
    sq = m @ m
    fact_sq = svd(sq, tol)
    sq_ep = _ep_from_fact(fact_sq, tol)
    same_range = projector_gap(range_basis_of(fact_sq), range_basis_of(svd(m, tol))) <= ctx.tol.eq_atol
    ok = not (sq_ep and same_range)
    return _Trial(ok, 0.0 if ok else 1.0, direction="reject",
                  payload=None if ok else {"T": m},
                  note=None if ok else "square of a non-EP matrix is EP with unchanged range")


def _compression_invertible(
    compression: np.ndarray, parent: SvdFactorization, tol: ToleranceConfig
) -> bool:
    """Invertibility of the carrier compression at the parent matrix's scale.

    The compression's own relative cutoff cannot see that, say, a 1 x 1
    compression of [1e-16] is zero; singular values are compared against
    rank_rtol * sigma_1 of the matrix being compressed.
    """
    if compression.shape[0] == 0:
        return True
    sv = np.linalg.svd(compression, compute_uv=False)
    parent_sigma1 = float(parent.singular_values[0]) if parent.singular_values.size else 0.0
    return bool(sv.min() > tol.rank_rtol * parent_sigma1)


def _check_thm2_7(ctx: _Ctx, rng, t: int) -> _Trial:
    """Nonzero spectrum of an EP matrix equals the spectrum of its carrier compression."""
    tol = ctx.tol
    if t % 8 == 1:
        m = _gen_for(ctx, rng, "non_ep")
        fact = svd(m, tol)
        basis = fact.carrier_vectors()
        compression = basis.conj().T @ m @ basis
        singular = not _compression_invertible(compression, fact, tol)
        ctx.details.setdefault("non_ep_compression_singular", bool(singular))
        return _Trial(singular, 0.0 if singular else 1.0, direction="reject",
                      payload=None if singular else {"T": m},
                      note=None if singular else "carrier compression of non-EP matrix is invertible")
    m = _gen_for(ctx, rng, "ep")
    fact = svd(m, tol)
    r = fact.numerical_rank
    basis = fact.carrier_vectors()
    compression = basis.conj().T @ m @ basis
    scale = 1.0 + operator_norm(m)
    payload = {"T": m}

    invertible = _compression_invertible(compression, fact, tol)
    eig_all = eigenvalues(m, tol)
    order = np.argsort(np.abs(eig_all), kind="stable")
    zero_part = eig_all[order[: m.shape[0] - r]]
    nonzero_part = eig_all[order[m.shape[0] - r :]]
    zero_resid = float(np.max(np.abs(zero_part))) if zero_part.size else 0.0
    match_resid = _multiset_gap(nonzero_part, eigenvalues(compression, tol))
    return _residual_trial(max(zero_resid, match_resid), scale, tol,
                           extra_ok=invertible, payload=payload,
                           note=None if invertible else "carrier compression lost rank")


def _check_thm2_12(ctx: _Ctx, rng, t: int) -> _Trial:
    """Product of two EP matrices is EP iff it preserves range and null space."""
    tol = ctx.tol
    spec = ctx.spec
    aligned = t % 2 == 1
    if aligned:
        v = _haar_unitary(rng, spec.dim)
        a1 = _conditioned_invertible(rng, max(spec.rank, 1), spec.condition_bound)
        a2 = _conditioned_invertible(rng, max(spec.rank, 1), spec.condition_bound)
        pad = spec.dim - max(spec.rank, 1)
        s = v @ direct_sum(a1, np.zeros((pad, pad))) @ v.conj().T if pad else v @ a1 @ v.conj().T
        t_mat = v @ direct_sum(a2, np.zeros((pad, pad))) @ v.conj().T if pad else v @ a2 @ v.conj().T
        if _corrupt_ep_generation:
            s = _canonical_non_ep(spec.dim)
    else:
        s, t_mat = _gen_product_pair(rng, spec.dim, spec.rank, spec.condition_bound, tol)
    product = s @ t_mat
    fact_p = svd(product, tol)
    fact_t = svd(t_mat, tol)
    range_same = (
        projector_gap(range_basis_of(fact_p), range_basis_of(fact_t)) <= tol.eq_atol
    )
    null_same = (
        projector_gap(null_basis_of(fact_p), null_basis_of(fact_t)) <= tol.eq_atol
    )
    conds = range_same and null_same
    ep_p = _ep_from_fact(fact_p, tol)
    payload = {"S": s, "T": t_mat}
    direction = "accept" if conds else "reject"
    if ep_p != conds:
        return _Trial(False, 1.0, direction=direction, payload=payload,
                      note=f"is_ep(ST)={ep_p} but range/null conditions={conds}")
    if aligned and not conds:
        return _Trial(False, 1.0, direction=direction, payload=payload,
                      note="aligned EP pair failed the range/null conditions")
    return _Trial(True, 0.0, direction=direction)


def _check_thm2_13(ctx: _Ctx, rng, t: int) -> _Trial:
    """Range of |T|^alpha is alpha-independent; for EP T it equals range(T)."""
    tol = ctx.tol
    family = ("ep", "non_ep", "normal_ep")[t % 3]
    m = _gen_for(ctx, rng, family)
    modulus = polar_decomposition(m, tol).modulus_part
    base = range_basis_of(svd(modulus, tol))
    worst = 0.0
    for alpha in FRACTIONAL_ALPHA_GRID:
        power = fractional_abs_power(m, alpha, tol)
        worst = max(worst, projector_gap(range_basis_of(svd(power, tol)), base))
    fact_m = svd(m, tol)
    gap_to_range = projector_gap(range_basis_of(fact_m), base)
    if family == "non_ep":
        ok = gap_to_range > tol.eq_atol
        return _residual_trial(worst, 1.0, tol, extra_ok=ok, direction="reject",
                               payload={"T": m},
                               note=None if ok else "non-EP matrix has range(|T|) == range(T)")
    worst = max(worst, gap_to_range)
    return _residual_trial(worst, 1.0, tol, payload={"T": m})


def _check_thm2_15(ctx: _Ctx, rng, t: int) -> _Trial:
    """If range(T) = range(|T|) (= range(|T|^alpha), alpha in (0,1)) then T is EP."""
    tol = ctx.tol
    family = "ep" if t % 2 == 0 else "non_ep"
    m = _gen_for(ctx, rng, family)
    fact_m = svd(m, tol)
    base = range_basis_of(fact_m)
    modulus_range = range_basis_of(svd(polar_decomposition(m, tol).modulus_part, tol))
    half_range = range_basis_of(svd(fractional_abs_power(m, 0.5, tol), tol))
    hyp = (
        projector_gap(base, modulus_range) <= tol.eq_atol
        and projector_gap(base, half_range) <= tol.eq_atol
    )
    ep = _ep_from_fact(fact_m, tol)
    if family == "ep":
        ok = hyp and ep
        return _Trial(ok, 0.0 if ok else 1.0, payload=None if ok else {"T": m},
                      note=None if ok else f"hypothesis={hyp}, is_ep={ep}")
    ok = (not hyp) and (not ep)
    return _Trial(ok, 0.0 if ok else 1.0, direction="reject",
                  payload=None if ok else {"T": m},
                  note=None if ok else "non-EP matrix satisfied range(T) = range(|T|)")


def _check_thm2_16(ctx: _Ctx, rng, t: int) -> _Trial:
    """Certified dominated perturbations keep EP-ness (hypo-EP collapses to EP here)."""
    tol = ctx.tol
    spec = ctx.spec
    pspec = ctx.pspec
    mode = t % 5
    if mode == 1:
        t_mat = _gen_for(ctx, rng, "ep")
        s = 2.0 * t_mat
        ta = adjoint(t_mat)
        dominated = psd_dominates(pspec.a**2 * (ta @ t_mat), adjoint(s) @ s, tol)
        ok = not dominated
        return _Trial(ok, 0.0 if ok else 1.0, direction="reject",
                      payload=None if ok else {"T": t_mat, "S": s},
                      note=None if ok else "dominance certificate accepted a non-dominated pair")
    if mode == 2:
        base = _gen_normal_ep(rng, spec.dim, spec.rank, spec.condition_bound, tol)
        c = min(pspec.a, pspec.b) * rng.uniform(0.2, 0.9)
        s = c * base
        t_mat = base
    else:
        t_mat, s = _gen_perturbation_pair(
            rng, spec.dim, spec.rank, spec.condition_bound, tol, pspec, loose=mode == 3
        )
    ta = adjoint(t_mat)
    sa = adjoint(s)
    cert = psd_dominates(pspec.a**2 * (ta @ t_mat), sa @ s, tol) and psd_dominates(
        pspec.b**2 * (t_mat @ ta), s @ sa, tol
    )
    total = t_mat + s
    hypo = is_hypo_ep(total, tol)
    ep = is_ep(total, tol)
    rep_gap = classify(total, tol).range_gap
    extra_ok = cert and hypo and ep
    return _residual_trial(rep_gap, 1.0, tol, extra_ok=extra_ok,
                           payload={"T": t_mat, "S": s},
                           note=None if extra_ok else
                           f"certificate={cert}, hypo_ep={hypo}, ep={ep}")


def _check_thm2_19(ctx: _Ctx, rng, t: int) -> _Trial:
    """EP iff T kills the corange and T* kills its own corange."""
    tol = ctx.tol
    family = "ep" if t % 2 == 0 else "non_ep"
    m = _gen_for(ctx, rng, family)
    dim = m.shape[0]
    eye = np.eye(dim, dtype=np.complex128)
    mp = pseudoinverse(m, tol)
    madj = adjoint(m)
    madj_p = pseudoinverse(madj, tol)
    r1 = _norm2(m @ (eye - m @ mp))
    r2 = _norm2(madj @ (eye - madj @ madj_p))
    scale = 1.0 + operator_norm(m)
    pred = r1 <= tol.eq_atol * scale and r2 <= tol.eq_atol * scale
    ep = is_ep(m, tol)
    expected = family == "ep"
    if pred != expected or ep != expected:
        return _Trial(False, 1.0, direction="accept" if expected else "reject",
                      payload={"T": m},
                      note=f"annihilation predicate={pred}, is_ep={ep}, expected {expected}")
    if expected:
        return _residual_trial(max(r1, r2), scale, tol, payload={"T": m})
    return _Trial(True, 0.0, direction="reject")


def _window_conditions(
    terms, limit: np.ndarray, tol: ToleranceConfig
) -> tuple[tuple[bool, bool, bool], dict]:
    """Finite-window diagnostics for pseudoinverse convergence of a sequence.

    Conditions mirror the three equivalent statements for T_k -> T with
    closed ranges: (a) pinv convergence, (b) convergence of T_k+ T_k, and
    (c) uniform boundedness of ||T_k+||.  On a finite window these are
    decided by scale-free ratios: the tail must shrink below a quarter of
    the head (a, b) and the pinv norms may not spread by more than 10x (c).
    """
    limit_pinv = pseudoinverse(limit, tol)
    limit_proj = limit_pinv @ limit
    pinv_norms = []
    gaps = []
    proj_gaps = []
    prev = None
    successive = []
    for term in terms:
        tp = pseudoinverse(term, tol)
        pinv_norms.append(_norm2(tp))
        gaps.append(_norm2(tp - limit_pinv))
        proj_gaps.append(_norm2(tp @ term - limit_proj))
        if prev is not None:
            successive.append(_norm2(tp - prev))
        prev = tp
    sup_norm = max(pinv_norms)
    growth_ratio = sup_norm / max(min(pinv_norms), 1e-300)
    cond_c = growth_ratio <= 10.0
    cond_a = gaps[-1] <= max(0.25 * gaps[0], 10.0 * tol.eq_atol * (1.0 + sup_norm))
    cond_b = proj_gaps[-1] <= max(0.25 * proj_gaps[0], 10.0 * tol.eq_atol * 2.0)
    diag = {
        "window": len(terms),
        "sup_pinv_norm": float(sup_norm),
        "pinv_norm_growth_ratio": float(growth_ratio),
        "first_pinv_gap": float(gaps[0]),
        "final_pinv_gap": float(gaps[-1]),
        "final_projector_gap": float(proj_gaps[-1]),
        "min_successive_pinv_gap_tail": float(min(successive[-5:])) if successive else 0.0,
        "cond_a_holds": bool(cond_a),
        "cond_b_holds": bool(cond_b),
        "cond_c_holds": bool(cond_c),
    }
    return (cond_a, cond_b, cond_c), diag


def _check_thm1_5(ctx: _Ctx, rng, t: int) -> _Trial:
    """Pseudoinverse convergence equivalences on convergent matrix windows."""
    tol = ctx.tol
    spec = ctx.spec
    if t % 2 == 0:
        seq = _gen_sequence(rng, spec.dim, spec.rank, spec.condition_bound, tol)
        conds, diag = _window_conditions(seq.terms, seq.limit, tol)
        diag["kind"] = "fixed_range_scaling"
        ctx.details.setdefault("positive_example", diag)
        ok = all(conds)
        return _Trial(ok, 0.0 if ok else 1.0,
                      payload=None if ok else {"T": seq.limit},
                      note=None if ok else f"positive sequence conditions {conds}")
    ambient = max(spec.dim, 16)
    window = ambient - 1
    terms = tuple(harmonic_truncation(k, ambient) for k in range(1, window + 1))
    limit = harmonic_truncation(ambient, ambient)
    conds, diag = _window_conditions(terms, limit, tol)
    diag["kind"] = "harmonic_truncations"
    diag["ambient_dim"] = ambient
    ctx.details.setdefault("negative_example", diag)
    ok = not any(conds)
    return _Trial(ok, 0.0 if ok else 1.0, direction="reject",
                  payload=None if ok else {"T_limit": limit},
                  note=None if ok else f"divergent sequence conditions {conds}")


def _cayley_unitary(x: np.ndarray) -> np.ndarray:
    eye = np.eye(x.shape[0], dtype=np.complex128)
    return (eye - x) @ np.linalg.inv(eye + x)


def _check_thm3_2(ctx: _Ctx, rng, t: int) -> _Trial:
    """Norm limits of EP matrices with gamma >= delta stay EP with gamma >= delta."""
    tol = ctx.tol
    spec = ctx.spec
    delta = EP_MEMBERSHIP_DELTA
    base = _gen_ep(rng, spec.dim, spec.rank, spec.condition_bound, tol)
    gamma0 = reduced_min_modulus(base, tol)
    if gamma0 <= 0.0:
        raise GenerationError("membership sequence needs a nonzero base matrix")
    target = delta * (1.0 + rng.uniform(0.0, 1.0))
    limit = base * (target / gamma0)

    if t % 2 == 0:
        terms = [(1.0 + 2.0**-k) * limit for k in range(1, SEQUENCE_LENGTH + 1)]
    else:
        g = rng.standard_normal(limit.shape) + 1j * rng.standard_normal(limit.shape)
        skew = (g - g.conj().T) / 2.0
        skew = skew / max(_norm2(skew), 1e-300)
        terms = []
        for k in range(1, SEQUENCE_LENGTH + 1):
            q = _cayley_unitary(2.0**-k * skew)
            terms.append(q @ limit @ q.conj().T)

    for term in terms:
        fact = svd(term, tol)
        gamma_k = float(fact.singular_values[fact.numerical_rank - 1]) if fact.numerical_rank else 0.0
        if gamma_k < delta - 1e-9 or not _ep_from_fact(fact, tol):
            return _Trial(False, 1.0, payload={"T_k": term},
                          note="sequence term left the certified EP membership set")
    if _norm2(terms[-1] - limit) > 1e-9:
        return _Trial(False, 1.0, payload={"T": limit},
                      note="sequence failed to converge to its declared limit")
    rep = classify(limit, tol)
    residual = max(0.0, delta - rep.gamma)
    ok = rep.is_ep and rep.gamma >= delta - 1e-9
    return _Trial(ok, residual, payload=None if ok else {"T": limit},
                  note=None if ok else f"limit is_ep={rep.is_ep}, gamma={rep.gamma}")


def _check_thm3_4(ctx: _Ctx, rng, t: int) -> _Trial:
    """gamma <= spectral radius for EP matrices; nilpotent control violates it."""
    tol = ctx.tol
    spec = ctx.spec
    if t % 10 == 1:
        control = np.zeros((2, 2), dtype=np.complex128)
        control[0, 1] = 1.0
        rep = classify(control, tol)
        excluded = (not rep.is_ep) and rep.gamma > rep.spectral_radius
        ctx.details.setdefault(
            "nilpotent_control",
            {
                "gamma": rep.gamma,
                "spectral_radius": rep.spectral_radius,
                "is_ep": rep.is_ep,
                "violates_inequality": bool(rep.gamma > rep.spectral_radius),
            },
        )
        return _Trial(excluded, 0.0 if excluded else 1.0, direction="reject",
                      payload=None if excluded else {"T": control},
                      note=None if excluded else "nilpotent control was not excluded")
    if t % 2 == 0:
        m = _gen_for(ctx, rng, "ep")
        rep = classify(m, tol)
        scale = 1.0 + operator_norm(m)
        residual = max(0.0, rep.gamma - rep.spectral_radius)
        ok = rep.is_ep and residual <= 1e-10 * scale
        return _Trial(ok, residual, payload=None if ok else {"T": m},
                      note=None if ok else
                      f"gamma={rep.gamma} exceeds spectral radius={rep.spectral_radius}")
    m = _gen_for(ctx, rng, "ep", cond=30.0)
    gamma1 = reduced_min_modulus(m, tol)
    norm = operator_norm(m)
    worst = 0.0
    power = m
    for n in (2, 3):
        power = power @ m
        gamma_n = reduced_min_modulus(power, tol)
        bound = norm ** (n - 1) * gamma1 + 10.0 * tol.eq_atol * (1.0 + norm) ** n
        worst = max(worst, gamma_n - bound)
    ok = worst <= 0.0
    return _Trial(ok, max(0.0, worst), payload=None if ok else {"T": m},
                  note=None if ok else "gamma of a power exceeded the norm-chain bound")


# ---------------------------------------------------------------------------
# Dispatch table and runner
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _CheckerEntry:
    fn: Callable[[_Ctx, np.random.Generator, int], _Trial]
    two_directions: bool
    static_notes: tuple[str, ...] = ()


_CHECKERS: dict[str, _CheckerEntry] = {
    "thm1.5": _CheckerEntry(
        _check_thm1_5, True,
        ("pinv convergence is tested against the limit's pseudoinverse "
         "(the printed statement omits the dagger on the limit)",),
    ),
    "thm2.1": _CheckerEntry(_check_thm2_1, True),
    "thm2.2": _CheckerEntry(_check_thm2_2, True),
    "thm2.3": _CheckerEntry(_check_thm2_3, True),
    "thm2.4": _CheckerEntry(_check_thm2_4, True),
    "thm2.5": _CheckerEntry(_check_thm2_5, True),
    "thm2.6": _CheckerEntry(
        _check_thm2_6, True,
        ("rejecting direction tests NOT(square EP with unchanged range): a "
         "power of a non-EP matrix may itself be EP (nilpotents square to 0)",),
    ),
    "thm2.7": _CheckerEntry(_check_thm2_7, True),
    "thm2.12": _CheckerEntry(
        _check_thm2_12, True,
        ("adjoint matrix-representation hypothesis is vacuous in finite "
         "dimension and not checked",),
    ),
    "thm2.13": _CheckerEntry(_check_thm2_13, True),
    "thm2.15": _CheckerEntry(_check_thm2_15, True),
    "thm2.16": _CheckerEntry(
        _check_thm2_16, True,
        ("hypo-EP and EP coincide in finite dimension; both conclusions are "
         "checked on the same instances",),
    ),
    "thm2.19": _CheckerEntry(_check_thm2_19, True),
    "thm3.2": _CheckerEntry(
        _check_thm3_2, False,
        ("sequence terms are certified EP with gamma >= delta before the "
         "limit is tested; delta = 0.1",),
    ),
    "thm3.4": _CheckerEntry(_check_thm3_4, True),
}

THEOREM_IDS = tuple(sorted(_CHECKERS, key=lambda s: tuple(map(int, s[3:].split(".")))))


def _counterexample_payload(trial_index: int, trial: _Trial) -> dict:
    matrices = {
        name: matrix_to_payload(matrix) for name, matrix in (trial.payload or {}).items()
    }
    payload: dict = {"trial": trial_index, "matrices": matrices}
    if trial.note:
        payload["note"] = trial.note
    return payload


def run_theorem_check(
    theorem_id: str,
    spec: GeneratorSpec,
    trials: int,
    tol: ToleranceConfig = DEFAULT_TOL,
    perturbation: PerturbationSpec | None = None,
) -> TheoremVerdict:
    """Run one theorem verifier over ``trials`` generated instances.

    The spec supplies dimension, rank, conditioning and the master seed; each
    verifier schedules its own accepting and control families across the
    trial indices (spec.family is not consulted).  Raises UnknownTheorem for
    ids outside the dispatch table and InvalidSpec for specs the verifier
    cannot exercise (all verifiers need rank >= 1, and two-direction
    verifiers need dim >= 2 for the non-EP control family).
    """
    entry = _CHECKERS.get(theorem_id)
    if entry is None:
        raise UnknownTheorem(
            f"unknown theorem id {theorem_id!r}; known: {', '.join(THEOREM_IDS)}"
        )
    if trials < 1:
        raise InvalidSpec(f"trials must be >= 1, got {trials}")
    if spec.rank < 1:
        raise InvalidSpec("theorem verifiers need rank >= 1 (the zero matrix is treated separately)")
    if entry.two_directions and spec.dim < 2:
        raise InvalidSpec("two-direction verifiers need dim >= 2 for the control family")

    salt = THEOREM_IDS.index(theorem_id)
    ctx = _Ctx(spec=spec, tol=tol, pspec=perturbation or PerturbationSpec())
    start = time.perf_counter()
    failures = 0
    warnings = 0
    worst = 0.0
    counterexample = None
    accepting = 0
    rejecting = 0
    for t in range(trials):
        rng = np.random.default_rng([spec.seed, salt, t])
        trial = entry.fn(ctx, rng, t)
        if trial.direction == "reject":
            rejecting += 1
        else:
            accepting += 1
        worst = max(worst, trial.residual)
        if trial.warn:
            warnings += 1
        if not trial.ok:
            failures += 1
            if counterexample is None:
                counterexample = _counterexample_payload(t, trial)
    elapsed_ms = int(round((time.perf_counter() - start) * 1000.0))

    notes = list(entry.static_notes)
    if entry.two_directions and (accepting == 0 or rejecting == 0):
        notes.append(
            "configuration error: verifier saw "
            f"{accepting} accepting and {rejecting} rejecting instances"
        )
    details = dict(ctx.details)
    details["accepting_trials"] = accepting
    details["rejecting_trials"] = rejecting
    return TheoremVerdict(
        theorem_id=theorem_id,
        trials=trials,
        failures=failures,
        worst_residual=float(worst),
        counterexample=counterexample,
        elapsed_ms=elapsed_ms,
        warnings=warnings,
        notes=tuple(notes),
        details=details,
    )
