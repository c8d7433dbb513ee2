"""Shared instance generators and independent oracles for the test suite."""

from __future__ import annotations

import numpy as np

from offcorners import random_normal, random_unitary


def rng_for(*key: int) -> np.random.Generator:
    return np.random.default_rng(list(key))


def random_frame(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    return np.linalg.qr(g)[0]


def line_spectrum(rng: np.random.Generator, n: int, offset_scale: float = 2.0) -> np.ndarray:
    anchor = offset_scale * (rng.standard_normal() + 1j * rng.standard_normal())
    direction = np.exp(2j * np.pi * rng.uniform())
    ts = rng.uniform(-2.0, 2.0, size=n)
    while np.min(np.abs(np.subtract.outer(ts, ts)) + np.eye(n)) < 1e-3:
        ts = rng.uniform(-2.0, 2.0, size=n)
    return anchor + direction * ts


def circle_spectrum(rng: np.random.Generator, n: int) -> np.ndarray:
    center = rng.standard_normal() + 1j * rng.standard_normal()
    radius = rng.uniform(0.5, 2.0)
    phis = rng.uniform(0.0, 2.0 * np.pi, size=n)
    while np.min(np.abs(np.subtract.outer(phis, phis)) % (2 * np.pi) + np.eye(n)) < 1e-3:
        phis = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return center + radius * np.exp(1j * phis)


def cloud_spectrum(rng: np.random.Generator, n: int) -> np.ndarray:
    """Generic spectrum; for n >= 4 it is non-circlinear with probability 1."""
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def normal_with_spectrum(rng: np.random.Generator, spectrum: np.ndarray) -> np.ndarray:
    return random_normal(len(spectrum), spectrum, rng)


def well_conditioned_invertible(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """Invertible matrix with singular values in [0.5, 2] whose NW k-block is
    safely invertible; resamples deterministically until the block passes."""
    while True:
        u = random_unitary(n, rng)
        v = random_unitary(n, rng)
        s = rng.uniform(0.5, 2.0, size=n)
        m = (u * s) @ v.conj().T
        sv = np.linalg.svd(m[:k, :k], compute_uv=False)
        if sv[-1] > 0.02:
            return m


# ---------------------------------------------------------------------------
# Convex hull oracle (monotone chain) for the half-circle predicate
# ---------------------------------------------------------------------------


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Counter-clockwise convex hull via Andrew's monotone chain."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def origin_interior_margin(zs: np.ndarray) -> tuple[bool, float]:
    """(is the origin strictly inside conv(zs), distance to the hull boundary).

    Degenerate hulls (points or segments) have empty interior; the margin is
    then the distance from the origin to the degenerate hull.
    """
    pts = [(float(z.real), float(z.imag)) for z in zs]
    hull = convex_hull(pts)
    if len(hull) == 1:
        return False, float(np.hypot(*hull[0]))
    if len(hull) == 2:
        return False, _segment_distance(hull[0], hull[1])
    signed = []
    m = len(hull)
    for i in range(m):
        a, b = hull[i], hull[(i + 1) % m]
        ux, uy = b[0] - a[0], b[1] - a[1]
        norm = float(np.hypot(ux, uy))
        signed.append((ux * (-a[1]) - uy * (-a[0])) / norm)
    low = min(signed)
    return low > 0.0, abs(low)


def _segment_distance(a, b) -> float:
    ax, ay = a
    bx, by = b
    ux, uy = bx - ax, by - ay
    den = ux * ux + uy * uy
    t = 0.0 if den == 0 else min(1.0, max(0.0, (-ax * ux - ay * uy) / den))
    return float(np.hypot(ax + t * ux, ay + t * uy))
