"""Numerical range boundary sampling and the numerical radius.

For each direction theta on a uniform grid, the top eigenvector of the
Hermitian part of e^{-i theta} T supports the boundary of the numerical
range W(T) = { <Tx, x> : ||x|| = 1 }; the grid maximum of the top eigenvalue
is the numerical radius up to a grid error of order ||T|| (pi/m)^2 / 2.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError
from .linalg import as_cmatrix, require_square


def _hermitian_parts(a: np.ndarray, m: int) -> np.ndarray:
    thetas = 2.0 * np.pi * np.arange(m) / m
    phase = np.exp(-1j * thetas)[:, None, None]
    rotated = phase * a[None, :, :]
    return 0.5 * (rotated + rotated.conj().transpose(0, 2, 1))


def numerical_range_boundary(t, m: int = 720) -> np.ndarray:
    """m boundary support points of W(T); their hull converges to W(T)."""
    a = require_square(as_cmatrix(t))
    if m < 8:
        raise DimensionMismatchError("need at least 8 grid directions")
    stack = _hermitian_parts(a, m)
    _, vecs = np.linalg.eigh(stack)
    top = vecs[:, :, -1]
    return np.einsum("mi,ij,mj->m", top.conj(), a, top)


def numerical_radius(t, m: int = 720) -> float:
    """Grid maximum of the top eigenvalue of the rotated Hermitian parts."""
    a = require_square(as_cmatrix(t))
    if m < 8:
        raise DimensionMismatchError("need at least 8 grid directions")
    stack = _hermitian_parts(a, m)
    return float(np.linalg.eigvalsh(stack)[:, -1].max())
