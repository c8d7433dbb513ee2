"""Off-diagonal corner analysis for finite-dimensional complex operators.

Decides the common-norm and common-rank corner properties, constructs
explicit witness projections when they fail, and verifies the supporting
Schur-complement, Moebius-invariance and corner-norm identities.
"""

from ._kernels import backend as kernel_backend
from .circline import (
    CanonicalForm,
    Circline,
    HalfCircleResult,
    canonical_decomposition,
    fit_circline,
    half_circle_containment,
)
from .classify import (
    ClassificationReport,
    KrylovFrame,
    classify,
    cyclic_invariance_check,
    krylov_frame,
)
from .corners import (
    CornerReport,
    Projection,
    check_hs_equality,
    check_unitary_corner_identity,
    coordinate_projection,
    corner_pair,
    projection_from_frame,
)
from .errors import OffCornersError
from .linalg import (
    DEFAULT_TOLS,
    SpectralDecomposition,
    Tolerances,
    eig_normal,
    frobenius_norm,
    is_normal,
    numerical_rank,
    operator_norm,
    qr_orthonormal_frame,
    random_normal,
    random_unitary,
    singular_values,
)
from .moebius import (
    MoebiusMap,
    check_t1_invariance,
    moebius_apply_direct,
    moebius_apply_spectral,
    moebius_three_point,
)
from .numrange import numerical_radius, numerical_range_boundary
from .schur import BlockPartition, schur_complement, split_blocks, verify_block_inverse
from .witness import (
    T2Parameters,
    Witness,
    build_t2_unitary,
    falsify_deterministic,
    falsify_search,
    solve_t2_parameters,
    t2_determinant_gap,
    verify_witness,
    witness_4x4,
)

__version__ = "0.1.0"

__all__ = [
    "BlockPartition",
    "CanonicalForm",
    "Circline",
    "ClassificationReport",
    "CornerReport",
    "DEFAULT_TOLS",
    "HalfCircleResult",
    "KrylovFrame",
    "MoebiusMap",
    "OffCornersError",
    "Projection",
    "SpectralDecomposition",
    "T2Parameters",
    "Tolerances",
    "Witness",
    "build_t2_unitary",
    "canonical_decomposition",
    "check_hs_equality",
    "check_t1_invariance",
    "check_unitary_corner_identity",
    "classify",
    "coordinate_projection",
    "corner_pair",
    "cyclic_invariance_check",
    "eig_normal",
    "falsify_deterministic",
    "falsify_search",
    "fit_circline",
    "frobenius_norm",
    "half_circle_containment",
    "is_normal",
    "kernel_backend",
    "krylov_frame",
    "moebius_apply_direct",
    "moebius_apply_spectral",
    "moebius_three_point",
    "numerical_radius",
    "numerical_range_boundary",
    "numerical_rank",
    "operator_norm",
    "projection_from_frame",
    "qr_orthonormal_frame",
    "random_normal",
    "random_unitary",
    "schur_complement",
    "singular_values",
    "solve_t2_parameters",
    "split_blocks",
    "t2_determinant_gap",
    "verify_block_inverse",
    "verify_witness",
    "witness_4x4",
]
