"""Off-diagonal corner extraction and corner identities.

Relative to an orthogonal projection P with range spanned by ``frame``, a
square matrix T splits into blocks [[A, B], [C, D]].  The two off-diagonal
corners are stored as rectangular compressions in the frame bases:

    ne = frame* T complement   (k x (n-k), the block B)
    sw = complement* T frame   ((n-k) x k, the block C)

Ranks and norms agree with the zero-padded n x n versions, and conditioning
is better.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    FullOrZeroRankError,
    NotNormalError,
    NotUnitaryError,
)
from .linalg import (
    DEFAULT_TOLS,
    Tolerances,
    as_cmatrix,
    check_frame,
    frobenius_norm,
    is_normal,
    numerical_rank,
    operator_norm,
    require_square,
)


@dataclass(frozen=True)
class Projection:
    """Orthogonal projection stored as an orthonormal frame plus a completion.

    ``frame`` spans the range of P, ``complement_frame`` the range of I - P;
    stacked side by side they form a unitary matrix within 1e-12.
    """

    frame: np.ndarray
    complement_frame: np.ndarray

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[0]

    @property
    def rank(self) -> int:
        return self.frame.shape[1]

    def matrix(self) -> np.ndarray:
        """The projection as an n x n matrix frame @ frame*."""
        return self.frame @ self.frame.conj().T


@dataclass(frozen=True)
class CornerReport:
    """Both off-diagonal corners of (T, P) with their norms and ranks."""

    ne: np.ndarray
    sw: np.ndarray
    norm_ne: float
    norm_sw: float
    hs_ne: float
    hs_sw: float
    rank_ne: int
    rank_sw: int


def projection_from_frame(f) -> Projection:
    """Build a Projection from an orthonormal frame with 1 <= k < n.

    The complement is a full orthonormal completion (trailing columns of a
    complete QR), not I - f f*, so joint unitarity is exact to rounding.
    """
    frame = check_frame(f)
    n, k = frame.shape
    if k == n:
        raise FullOrZeroRankError("frame spans the whole space; no complement")
    q = np.linalg.qr(frame, mode="complete")[0]
    return Projection(frame=frame, complement_frame=np.ascontiguousarray(q[:, k:]))


def coordinate_projection(n: int, k: int) -> Projection:
    """Projection onto the span of the first k coordinate vectors."""
    if not 1 <= k < n:
        raise FullOrZeroRankError(f"need 1 <= k < n, got k={k}, n={n}")
    eye = np.eye(n, dtype=np.complex128)
    return Projection(frame=eye[:, :k].copy(), complement_frame=eye[:, k:].copy())


def corner_pair(t, p: Projection, tols: Tolerances = DEFAULT_TOLS) -> CornerReport:
    """Extract both off-diagonal corners of T relative to P and measure them."""
    a = require_square(as_cmatrix(t))
    if a.shape[0] != p.ambient_dim:
        raise DimensionMismatchError(
            f"matrix is {a.shape[0]}-dimensional but projection lives in dim {p.ambient_dim}"
        )
    ne = p.frame.conj().T @ a @ p.complement_frame
    sw = p.complement_frame.conj().T @ a @ p.frame
    return CornerReport(
        ne=ne,
        sw=sw,
        norm_ne=operator_norm(ne),
        norm_sw=operator_norm(sw),
        hs_ne=frobenius_norm(ne),
        hs_sw=frobenius_norm(sw),
        rank_ne=numerical_rank(ne, tols),
        rank_sw=numerical_rank(sw, tols),
    )


def check_unitary_corner_identity(u, p: Projection) -> float:
    """Residual of the unitary block identities I = A A* + B B* = A*A + C*C.

    Returns max(||B B* - (I - A A*)||, ||C* C - (I - A* A)||) in operator norm
    for the compressed blocks of U relative to P.
    """
    a = require_square(as_cmatrix(u))
    n = a.shape[0]
    if operator_norm(a.conj().T @ a - np.eye(n)) > 1e-10:
        raise NotUnitaryError("input is not unitary within 1e-10")
    if n != p.ambient_dim:
        raise DimensionMismatchError("projection dimension does not match")
    f, g = p.frame, p.complement_frame
    blk_a = f.conj().T @ a @ f
    blk_b = f.conj().T @ a @ g
    blk_c = g.conj().T @ a @ f
    k = f.shape[1]
    eye = np.eye(k)
    r1 = operator_norm(blk_b @ blk_b.conj().T - (eye - blk_a @ blk_a.conj().T))
    r2 = operator_norm(blk_c.conj().T @ blk_c - (eye - blk_a.conj().T @ blk_a))
    return max(r1, r2)


def check_hs_equality(t, p: Projection, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """True iff the squared Hilbert-Schmidt norms of both corners agree.

    Only meaningful for normal T, where the equality is a theorem; non-normal
    input is rejected.
    """
    a = require_square(as_cmatrix(t))
    if not is_normal(a, tols):
        raise NotNormalError("HS corner equality requires a normal matrix")
    rep = corner_pair(a, p, tols)
    scale = max(1.0, operator_norm(a) ** 2)
    return abs(rep.hs_ne**2 - rep.hs_sw**2) <= tols.tol_gap * scale
