"""Moebius maps z -> (az + b)/(cz + d), their functional calculus on normal
matrices, and the inverse-invariance check for corner statistics.

Maps compose like their 2x2 coefficient matrices, so the unique map through
three points is built by composing two standard "send (z0, z1, z2) to
(0, 1, inf)" maps; this avoids solving a 3x3 linear system whose conditioning
degrades when the targets are nearly collinear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corners import coordinate_projection, corner_pair
from .errors import (
    CoincidentPointsError,
    DimensionMismatchError,
    NotNormalError,
    PoleOnSpectrumError,
    SingularMatrixError,
)
from .linalg import (
    DEFAULT_TOLS,
    Tolerances,
    as_cmatrix,
    eig_normal,
    is_normal,
    require_square,
    singular_values,
)


@dataclass(frozen=True)
class MoebiusMap:
    """Coefficients of z -> (az + b)/(cz + d) with ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        top = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if abs(self.a * self.d - self.b * self.c) <= 1e-12 * top:
            raise CoincidentPointsError("degenerate coefficients: ad - bc ~ 0")

    def __call__(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def inverse(self) -> "MoebiusMap":
        return normalize_map(MoebiusMap(self.d, -self.b, -self.c, self.a))

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)


def normalize_map(m: MoebiusMap) -> MoebiusMap:
    """Scale coefficients so the largest-modulus one equals 1 (canonical form)."""
    coef = np.array([m.a, m.b, m.c, m.d], dtype=np.complex128)
    pivot = coef[int(np.argmax(np.abs(coef)))]
    coef = coef / pivot
    return MoebiusMap(*(complex(x) for x in coef))


def _to_zero_one_inf(z0: complex, z1: complex, z2: complex) -> np.ndarray:
    # matrix of the map sending (z0, z1, z2) to (0, 1, inf)
    return np.array(
        [[z1 - z2, -z0 * (z1 - z2)], [z1 - z0, -z2 * (z1 - z0)]], dtype=np.complex128
    )


def _adjugate(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=np.complex128)


def moebius_three_point(z, w) -> MoebiusMap:
    """The unique Moebius map with M(z_i) = w_i for three pairwise distinct points."""
    z = [complex(x) for x in z]
    w = [complex(x) for x in w]
    if len(z) != 3 or len(w) != 3:
        raise CoincidentPointsError("exactly three source and three target points required")
    for pts in (z, w):
        scale = max(1.0, max(abs(p) for p in pts))
        if (
            abs(pts[0] - pts[1]) <= 1e-12 * scale
            or abs(pts[0] - pts[2]) <= 1e-12 * scale
            or abs(pts[1] - pts[2]) <= 1e-12 * scale
        ):
            raise CoincidentPointsError("points must be pairwise distinct")
    mat = _adjugate(_to_zero_one_inf(*w)) @ _to_zero_one_inf(*z)
    return normalize_map(MoebiusMap(mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1]))


def moebius_apply_direct(t, m: MoebiusMap) -> np.ndarray:
    """(aT + bI)(cT + dI)^{-1}; requires cT + dI numerically invertible."""
    a = require_square(as_cmatrix(t))
    n = a.shape[0]
    den = m.c * a + m.d * np.eye(n)
    sv = singular_values(den)
    if sv[-1] <= 1e-10 * sv[0]:
        raise SingularMatrixError("cT + dI is numerically singular")
    num = m.a * a + m.b * np.eye(n)
    # X (cT + dI) = (aT + bI); T commutes with cT + dI, so the order is free
    return np.linalg.solve(den.T, num.T).T


def moebius_apply_spectral(t, m: MoebiusMap, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Apply M eigenvalue-wise on the spectral decomposition of a normal matrix.

    Pole proximity (|c lambda + d| <= 1e-10) is an error, not a warning:
    silent near-pole evaluation would poison downstream rank decisions.
    """
    a = require_square(as_cmatrix(t))
    dec = eig_normal(a, tols)  # raises NotNormalError
    den = m.c * dec.eigenvalues + m.d
    if np.abs(den).min() <= 1e-10:
        raise PoleOnSpectrumError("Moebius map has a pole on (or too near) the spectrum")
    mapped = (m.a * dec.eigenvalues + m.b) / den
    z = dec.eigenframe
    return (z * mapped) @ z.conj().T


def check_t1_invariance(t, k: int = 2, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """Corner rank/norm equality holds for T iff it holds for T^{-1}.

    Works on the coordinate partition after k; conjugate T by a unitary to
    probe other partitions.  Requires a normal, invertible 4x4 input.
    """
    a = require_square(as_cmatrix(t))
    n = a.shape[0]
    if n != 4 or k != 2:
        raise DimensionMismatchError("invariance check is defined for 4x4 matrices with k=2")
    if not is_normal(a, tols):
        raise NotNormalError("invariance check requires a normal matrix")
    sv = singular_values(a)
    if sv[-1] <= 1e-10 * sv[0]:
        raise SingularMatrixError("T is numerically singular")
    inv = np.linalg.inv(a)
    p = coordinate_projection(n, k)
    rep = corner_pair(a, p, tols)
    rep_inv = corner_pair(inv, p, tols)
    rank_eq = rep.rank_ne == rep.rank_sw
    rank_eq_inv = rep_inv.rank_ne == rep_inv.rank_sw
    norm_eq = abs(rep.norm_ne - rep.norm_sw) < tols.tol_gap
    norm_eq_inv = abs(rep_inv.norm_ne - rep_inv.norm_sw) < tols.tol_gap
    return rank_eq == rank_eq_inv and norm_eq == norm_eq_inv
