"""Hot numeric kernels with a numba fast path and a pure-NumPy fallback.

Two inner loops dominate runtime and are worth JIT compiling:

  * the Grassmannian hill-climb step loop of the norm-gap search (hundreds of
    small matrix products, exponentials and SVDs per restart), and
  * the lexicographic scan over 4-point spectrum subsets looking for a
    non-circlinear quadruple (up to C(64, 4) = 635376 subsets).

Each kernel is written once in the numba-compatible NumPy subset.  When numba
is importable and the environment variable ``OFFCORNERS_NUMBA`` is not set to
``0``/``false``/``off``, the module rebinds the kernels to their JIT-compiled
versions at import time; otherwise the plain Python definitions run as-is.
``benchmarks/bench_kernels.py`` times both paths.
"""

from __future__ import annotations

import math
import os

import numpy as np


def numba_requested() -> bool:
    flag = os.environ.get("OFFCORNERS_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "off", "no")


# ---------------------------------------------------------------------------
# Grassmannian norm-gap search
# ---------------------------------------------------------------------------


def _corner_gap(t, q, k, tol_rank):
    """Norm gap and corner ranks of T for the projection spanned by q[:, :k]."""
    f = np.ascontiguousarray(q[:, :k])
    g = np.ascontiguousarray(q[:, k:])
    fh = np.ascontiguousarray(f.conj().T)
    gh = np.ascontiguousarray(g.conj().T)
    ne = fh @ (t @ g)
    sw = gh @ (t @ f)
    s_ne = np.linalg.svd(ne)[1]
    s_sw = np.linalg.svd(sw)[1]
    gap = abs(s_ne[0] - s_sw[0])
    thr_ne = tol_rank * max(1.0, s_ne[0])
    thr_sw = tol_rank * max(1.0, s_sw[0])
    rank_ne = 0
    for v in s_ne:
        if v > thr_ne:
            rank_ne += 1
    rank_sw = 0
    for v in s_sw:
        if v > thr_sw:
            rank_sw += 1
    return gap, rank_ne, rank_sw


def _expm_skew(kmat, eps):
    """exp(eps * K) for skew-Hermitian K, exactly unitary up to rounding."""
    h = -1j * kmat
    w, v = np.linalg.eigh(h)
    phase = np.exp(1j * eps * w)
    return (v * phase) @ np.ascontiguousarray(v.conj().T)


def _search_restart(t, q0, k, normals_re, normals_im, eps0, eps_floor, tol_rank):
    """One hill-climb restart over the Grassmannian of rank-k projections.

    Steps multiply the full frame unitary by exp(eps * K) for a random
    skew-Hermitian K, which stays exactly on the manifold; eps is halved on
    failure to improve.  Returns the best norm gap with its frame plus the
    first frame (if any) at which the corner ranks differed.
    """
    q = q0.copy()
    gap, rank_ne, rank_sw = _corner_gap(t, q, k, tol_rank)
    best_gap = gap
    q_best = q.copy()
    found_rank = rank_ne != rank_sw
    q_rank = q.copy()
    eps = eps0
    steps = normals_re.shape[0]
    for s in range(steps):
        gmat = normals_re[s] + 1j * normals_im[s]
        kmat = (gmat - np.ascontiguousarray(gmat.conj().T)) * 0.5
        q2 = _expm_skew(kmat, eps) @ q
        gap2, rank_ne2, rank_sw2 = _corner_gap(t, q2, k, tol_rank)
        if (not found_rank) and rank_ne2 != rank_sw2:
            found_rank = True
            q_rank = q2.copy()
        if gap2 > best_gap:
            best_gap = gap2
            q = q2
            q_best = q2.copy()
        else:
            eps = eps * 0.5
            if eps < eps_floor:
                eps = eps_floor
    return best_gap, q_best, found_rank, q_rank


# ---------------------------------------------------------------------------
# Non-circlinear 4-subset scan
# ---------------------------------------------------------------------------


def _circlinear4(x0, y0, x1, y1, x2, y2, x3, y3, tol):
    """True iff the four points lie on a common line or circle within tol.

    Coordinates are centered and divided by the diameter first, so tol acts
    relative to the spread of the quadruple.
    """
    d = 0.0
    d = max(d, math.hypot(x1 - x0, y1 - y0))
    d = max(d, math.hypot(x2 - x0, y2 - y0))
    d = max(d, math.hypot(x3 - x0, y3 - y0))
    d = max(d, math.hypot(x2 - x1, y2 - y1))
    d = max(d, math.hypot(x3 - x1, y3 - y1))
    d = max(d, math.hypot(x3 - x2, y3 - y2))
    if d <= 0.0:
        return True
    cx = (x0 + x1 + x2 + x3) * 0.25
    cy = (y0 + y1 + y2 + y3) * 0.25
    ax = (x0 - cx) / d
    ay = (y0 - cy) / d
    bx = (x1 - cx) / d
    by = (y1 - cy) / d
    ex = (x2 - cx) / d
    ey = (y2 - cy) / d
    fx = (x3 - cx) / d
    fy = (y3 - cy) / d

    sxx = ax * ax + bx * bx + ex * ex + fx * fx
    sxy = ax * ay + bx * by + ex * ey + fx * fy
    syy = ay * ay + by * by + ey * ey + fy * fy
    theta = 0.5 * math.atan2(2.0 * sxy, sxx - syy)
    nx = -math.sin(theta)
    ny = math.cos(theta)
    res_line = 0.0
    res_line = max(res_line, abs(ax * nx + ay * ny))
    res_line = max(res_line, abs(bx * nx + by * ny))
    res_line = max(res_line, abs(ex * nx + ey * ny))
    res_line = max(res_line, abs(fx * nx + fy * ny))
    if res_line <= tol:
        return True

    # Kasa least-squares circle via the 3x3 normal equations (Cramer)
    ua = ax * ax + ay * ay
    ub = bx * bx + by * by
    ue = ex * ex + ey * ey
    uf = fx * fx + fy * fy
    a11 = sxx
    a12 = sxy
    a13 = ax + bx + ex + fx
    a22 = syy
    a23 = ay + by + ey + fy
    a33 = 4.0
    b1 = -(ax * ua + bx * ub + ex * ue + fx * uf)
    b2 = -(ay * ua + by * ub + ey * ue + fy * uf)
    b3 = -(ua + ub + ue + uf)
    det = (
        a11 * (a22 * a33 - a23 * a23)
        - a12 * (a12 * a33 - a23 * a13)
        + a13 * (a12 * a23 - a22 * a13)
    )
    if abs(det) <= 1e-300:
        return False
    dd = (
        b1 * (a22 * a33 - a23 * a23)
        - a12 * (b2 * a33 - a23 * b3)
        + a13 * (b2 * a23 - a22 * b3)
    ) / det
    ee = (
        a11 * (b2 * a33 - a23 * b3)
        - b1 * (a12 * a33 - a23 * a13)
        + a13 * (a12 * b3 - b2 * a13)
    ) / det
    ff = (
        a11 * (a22 * b3 - b2 * a23)
        - a12 * (a12 * b3 - b2 * a13)
        + b1 * (a12 * a23 - a22 * a13)
    ) / det
    r2 = 0.25 * (dd * dd + ee * ee) - ff
    if not r2 > 0.0:
        return False
    ccx = -0.5 * dd
    ccy = -0.5 * ee
    r = math.sqrt(r2)
    res_circ = 0.0
    res_circ = max(res_circ, abs(math.hypot(ax - ccx, ay - ccy) - r))
    res_circ = max(res_circ, abs(math.hypot(bx - ccx, by - ccy) - r))
    res_circ = max(res_circ, abs(math.hypot(ex - ccx, ey - ccy) - r))
    res_circ = max(res_circ, abs(math.hypot(fx - ccx, fy - ccy) - r))
    return res_circ <= tol


def _noncircline_scan(xs, ys, tol):
    """First 4-subset (lexicographic index order) failing the circlinear test.

    Returns (-1, -1, -1, -1) when every quadruple is circlinear.
    """
    m = xs.shape[0]
    for i in range(m - 3):
        for j in range(i + 1, m - 2):
            for p in range(j + 1, m - 1):
                for q in range(p + 1, m):
                    if not _circlinear4(
                        xs[i], ys[i], xs[j], ys[j], xs[p], ys[p], xs[q], ys[q], tol
                    ):
                        return i, j, p, q
    return -1, -1, -1, -1


# ---------------------------------------------------------------------------
# Backend selection (import time; flip with OFFCORNERS_NUMBA=0)
# ---------------------------------------------------------------------------

_BACKEND = "numpy"
if numba_requested():
    try:
        from numba import njit

        _circlinear4 = njit(cache=True)(_circlinear4)
        _corner_gap = njit(cache=True)(_corner_gap)
        _expm_skew = njit(cache=True)(_expm_skew)
        _search_restart = njit(cache=True)(_search_restart)
        _noncircline_scan = njit(cache=True)(_noncircline_scan)
        _BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is declared as a dependency
        pass

search_restart = _search_restart
noncircline_scan = _noncircline_scan


def backend() -> str:
    """Active kernel backend: "numba" or "numpy"."""
    return _BACKEND


def warmup() -> None:
    """Trigger JIT compilation of both kernels on tiny inputs."""
    t = np.eye(4, dtype=np.complex128)
    q = np.eye(4, dtype=np.complex128)
    z = np.zeros((1, 4, 4))
    search_restart(t, q, 2, z, z, 0.1, 1e-6, 1e-8)
    xs = np.array([0.0, 1.0, 2.0, 0.0])
    ys = np.array([0.0, 0.0, 0.0, 1.0])
    noncircline_scan(xs, ys, 1e-8)
