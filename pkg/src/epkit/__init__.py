"""epkit: pseudoinverse, subspace-geometry, and EP-matrix analysis toolkit.

Computes Moore-Penrose pseudoinverses, subspace bases and projectors, polar
decompositions, reduced minimum moduli and spectral radii for dense complex
matrices; classifies matrices as EP / hypo-EP / normal; and verifies a suite
of EP-operator characterizations through seeded property-based checks and
truncation studies of classical diagonal operator families.
"""

from .classify import ClassificationReport, classify, is_ep, is_hypo_ep, is_normal
from .core import (
    DEFAULT_TOL,
    MAX_DIM,
    SvdFactorization,
    ToleranceConfig,
    adjoint,
    as_matrix,
    eigenvalues,
    hermitian_eig,
    multiply,
    operator_norm,
    svd,
)
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    EpkitError,
    GenerationError,
    InvalidDimension,
    InvalidExponent,
    InvalidSpec,
    MatrixFileError,
    NotHermitian,
    NotSquare,
    UnknownTheorem,
)
from .harness import (
    GeneratorSpec,
    MatrixSequence,
    PerturbationSpec,
    TheoremVerdict,
    THEOREM_IDS,
    gen_matrix,
    psd_dominates,
    run_theorem_check,
)
from .models import FAMILIES, ModelFamily, harmonic_truncation, limit_study, realize
from .pinv import (
    MpIdentityReport,
    PolarFactors,
    direct_sum,
    fractional_abs_power,
    mp_identity_suite,
    penrose_residuals,
    polar_decomposition,
    pseudoinverse,
    reduced_min_modulus,
    spectral_radius,
)
from .serialize import TOOL_VERSION
from .subspace import (
    OrthonormalBasis,
    Projector,
    carrier_basis,
    null_basis,
    principal_angles,
    projector,
    range_basis,
    subspace_eq,
    subspace_leq,
)

__version__ = TOOL_VERSION

__all__ = [
    "ClassificationReport",
    "ConvergenceFailure",
    "DEFAULT_TOL",
    "DimensionMismatch",
    "EpkitError",
    "FAMILIES",
    "GenerationError",
    "GeneratorSpec",
    "InvalidDimension",
    "InvalidExponent",
    "InvalidSpec",
    "MAX_DIM",
    "MatrixFileError",
    "MatrixSequence",
    "ModelFamily",
    "MpIdentityReport",
    "NotHermitian",
    "NotSquare",
    "OrthonormalBasis",
    "PerturbationSpec",
    "PolarFactors",
    "Projector",
    "SvdFactorization",
    "THEOREM_IDS",
    "TheoremVerdict",
    "ToleranceConfig",
    "UnknownTheorem",
    "adjoint",
    "as_matrix",
    "carrier_basis",
    "classify",
    "direct_sum",
    "eigenvalues",
    "fractional_abs_power",
    "gen_matrix",
    "harmonic_truncation",
    "hermitian_eig",
    "is_ep",
    "is_hypo_ep",
    "is_normal",
    "limit_study",
    "mp_identity_suite",
    "multiply",
    "null_basis",
    "operator_norm",
    "penrose_residuals",
    "polar_decomposition",
    "principal_angles",
    "projector",
    "pseudoinverse",
    "psd_dominates",
    "range_basis",
    "realize",
    "reduced_min_modulus",
    "run_theorem_check",
    "spectral_radius",
    "subspace_eq",
    "subspace_leq",
    "svd",
]
