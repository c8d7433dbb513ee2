"""Dense complex linear algebra primitives with explicit tolerance contracts.

All matrices are plain ``numpy.ndarray`` of dtype complex128.  Orthonormal
frames are (n, k) arrays whose columns satisfy ``F.conj().T @ F = I`` within
1e-12.  Every function is pure; randomness always flows from an explicit seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatchError,
    InvalidFrameError,
    NoConvergenceError,
    NonFiniteError,
    NotNormalError,
    RankDeficientError,
)

FRAME_TOL = 1e-12


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances used across the package.

    Defaults sit two orders of magnitude above double-precision eig/SVD
    accuracy at n <= 64, so verdicts are stable against rounding noise.
    """

    tol_normal: float = 1e-10
    tol_rank: float = 1e-8
    tol_geom: float = 1e-8
    tol_gap: float = 1e-6

    def __post_init__(self):
        for name in ("tol_normal", "tol_rank", "tol_geom", "tol_gap"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOLS = Tolerances()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Unitary diagonalization T = Z diag(eigenvalues) Z* of a normal matrix.

    ``eigenvalues`` are sorted by (Re, Im) descending so reports are
    reproducible; ``eigenframe`` is unitary with one eigenvector per column.
    """

    eigenvalues: np.ndarray
    eigenframe: np.ndarray


def as_cmatrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonFiniteError("matrix contains NaN or Inf entries")
    return a


def require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def operator_norm(m) -> float:
    """Largest singular value."""
    a = as_cmatrix(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def frobenius_norm(m) -> float:
    """Hilbert-Schmidt norm: sqrt of the sum of squared entry moduli."""
    a = as_cmatrix(m)
    return float(np.linalg.norm(a))


def singular_values(m) -> np.ndarray:
    """All singular values in descending order, length min(rows, cols)."""
    a = as_cmatrix(m)
    return np.linalg.svd(a, compute_uv=False)


def numerical_rank(m, tols: Tolerances = DEFAULT_TOLS) -> int:
    """Number of singular values above tol_rank * max(1, operator norm)."""
    sv = singular_values(m)
    if sv.size == 0:
        return 0
    return int(np.count_nonzero(sv > tols.tol_rank * max(1.0, float(sv[0]))))


def is_normal(t, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """True iff ||T T* - T* T|| <= tol_normal * ||T||^2 (operator norms)."""
    a = require_square(as_cmatrix(t))
    if a.size == 0:
        return True
    ah = a.conj().T
    defect = operator_norm(a @ ah - ah @ a)
    scale = operator_norm(a) ** 2
    return defect <= tols.tol_normal * scale


def eig_normal(t, tols: Tolerances = DEFAULT_TOLS) -> SpectralDecomposition:
    """Spectral decomposition of a normal matrix via the complex Schur form.

    The Schur unitary is exactly orthonormal even for clustered eigenvalues,
    which ``numpy.linalg.eig`` does not guarantee.  Raises NotNormalError when
    the input fails the normality test, NoConvergenceError when the QR
    iteration inside LAPACK gives up.
    """
    a = require_square(as_cmatrix(t))
    if not is_normal(a, tols):
        raise NotNormalError("matrix is not normal within tol_normal")
    try:
        tri, z = scipy.linalg.schur(a, output="complex")
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    w = np.diag(tri).copy()
    order = np.lexsort((-w.imag, -w.real))
    return SpectralDecomposition(eigenvalues=w[order], eigenframe=np.ascontiguousarray(z[:, order]))


def check_frame(f) -> np.ndarray:
    """Validate an orthonormal frame (n, k) with 1 <= k <= n."""
    a = as_cmatrix(f)
    n, k = a.shape
    if not 1 <= k <= n:
        raise InvalidFrameError(f"frame must have 1 <= k <= n, got shape {a.shape}")
    gram = a.conj().T @ a
    if np.abs(gram - np.eye(k)).max() > FRAME_TOL:
        raise InvalidFrameError("frame columns are not orthonormal within 1e-12")
    return a


def qr_orthonormal_frame(a) -> np.ndarray:
    """Orthonormal frame spanning the column space of a full-column-rank matrix."""
    m = as_cmatrix(a)
    sv = singular_values(m)
    if sv.size == 0 or sv[-1] <= 1e-12 * sv[0]:
        raise RankDeficientError("matrix does not have full column rank")
    q = np.linalg.qr(m, mode="reduced")[0]
    return q


def random_unitary(n: int, seed) -> np.ndarray:
    """Haar-distributed unitary, deterministic given the seed.

    QR of a complex Ginibre matrix with the phases of R's diagonal pulled into
    Q; plain orthonormalization alone is not Haar.
    """
    if n < 1:
        raise DimensionMismatchError("n must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_normal(n: int, spectrum, seed) -> np.ndarray:
    """U diag(spectrum) U* for a Haar-random U; deterministic given the seed."""
    lam = np.asarray(spectrum, dtype=np.complex128).ravel()
    if lam.size != n:
        raise DimensionMismatchError(f"spectrum length {lam.size} != n = {n}")
    u = random_unitary(n, seed)
    return (u * lam) @ u.conj().T
