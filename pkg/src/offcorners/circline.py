"""Geometry of spectra: circle/line fitting, the canonical split T = lambda I + mu A,
and the closed half-circle containment predicate for unimodular point sets.

Fitting is scale-free: points are centered on their centroid and divided by
their diameter (max pairwise distance) before any residual is measured, so
verdicts are invariant under translation, rotation and positive scaling.
The diameter (not the mean spread) normalizes residuals so a single outlier
cannot pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EmptyInputError, NotCirclinearError, NotUnimodularError
from .linalg import DEFAULT_TOLS, Tolerances, as_cmatrix, eig_normal, operator_norm, require_square

DEDUPE_TOL = 1e-9


@dataclass(frozen=True)
class Circline:
    """A fitted line, circle, or the verdict that neither fits.

    Lines are stored as anchor + t * direction with |direction| = 1 and the
    anchor chosen as the point of the line closest to the origin; circles as
    center and radius.  ``max_residual`` is the worst point deviation in the
    original coordinates.
    """

    kind: str  # "line" | "circle" | "none"
    anchor: Optional[complex] = None
    direction: Optional[complex] = None
    center: Optional[complex] = None
    radius: Optional[float] = None
    max_residual: float = 0.0


@dataclass(frozen=True)
class CanonicalForm:
    """T = lam * I + mu * a with a Hermitian (line spectrum) or unitary (circle)."""

    lam: complex
    mu: complex
    kind: str  # "hermitian" | "unitary"
    a: np.ndarray


@dataclass(frozen=True)
class HalfCircleResult:
    contained: bool
    witness_mu: Optional[complex]


def dedupe_points(points, tol: float = DEDUPE_TOL) -> np.ndarray:
    """Greedy clustering of near-identical points; first representative wins.

    Output is sorted lexicographically by (Re, Im) ascending.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise EmptyInputError("no points given")
    if not np.all(np.isfinite(pts.real)) or not np.all(np.isfinite(pts.imag)):
        raise EmptyInputError("points must be finite")
    reps: list[complex] = []
    for p in pts:
        if not any(abs(p - r) <= tol for r in reps):
            reps.append(complex(p))
    reps.sort(key=lambda z: (z.real, z.imag))
    return np.array(reps, dtype=np.complex128)


def _diameter(pts: np.ndarray) -> float:
    diff = pts[:, None] - pts[None, :]
    return float(np.abs(diff).max())


def _canonical_direction(u: complex) -> complex:
    u = u / abs(u)
    if u.real < 0 or (u.real == 0 and u.imag < 0):
        u = -u
    return u


def _line_through(pts: np.ndarray) -> tuple[complex, complex, float]:
    """Best line via the principal direction of the centered points.

    Returns (anchor closest to origin, unit direction, max distance).
    """
    centroid = complex(pts.mean())
    d = pts - centroid
    if pts.size == 1:
        u = 1.0 + 0.0j
    elif pts.size == 2:
        u = complex(pts[1] - pts[0])
        u /= abs(u)
    else:
        sxx = float(np.sum(d.real * d.real))
        sxy = float(np.sum(d.real * d.imag))
        syy = float(np.sum(d.imag * d.imag))
        theta = 0.5 * np.arctan2(2.0 * sxy, sxx - syy)
        u = complex(np.cos(theta), np.sin(theta))
    u = _canonical_direction(u)
    # distance of p to the line = |Im((p - centroid) / u)|
    res = float(np.abs((d / u).imag).max()) if pts.size else 0.0
    anchor = centroid - (np.conj(u) * centroid).real * u
    return complex(anchor), complex(u), res


def _circumcircle(z1: complex, z2: complex, z3: complex) -> tuple[complex, float] | None:
    x1, y1, x2, y2, x3, y3 = z1.real, z1.imag, z2.real, z2.imag, z3.real, z3.imag
    d = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2))
    if d == 0.0:
        return None
    q1, q2, q3 = abs(z1) ** 2, abs(z2) ** 2, abs(z3) ** 2
    ux = (q1 * (y2 - y3) + q2 * (y3 - y1) + q3 * (y1 - y2)) / d
    uy = (q1 * (x3 - x2) + q2 * (x1 - x3) + q3 * (x2 - x1)) / d
    center = complex(ux, uy)
    return center, abs(z1 - center)


def _kasa_circle(pts: np.ndarray) -> tuple[complex, float] | None:
    """Least-squares circle through >= 3 points via x^2+y^2+Dx+Ey+F = 0."""
    x, y = pts.real, pts.imag
    u = x * x + y * y
    m = float(len(pts))
    a11, a12, a13 = float(np.sum(x * x)), float(np.sum(x * y)), float(np.sum(x))
    a22, a23 = float(np.sum(y * y)), float(np.sum(y))
    b1, b2, b3 = -float(np.sum(x * u)), -float(np.sum(y * u)), -float(np.sum(u))
    det = (
        a11 * (a22 * m - a23 * a23)
        - a12 * (a12 * m - a23 * a13)
        + a13 * (a12 * a23 - a22 * a13)
    )
    if abs(det) <= 1e-300:
        return None
    dd = (
        b1 * (a22 * m - a23 * a23)
        - a12 * (b2 * m - a23 * b3)
        + a13 * (b2 * a23 - a22 * b3)
    ) / det
    ee = (
        a11 * (b2 * m - a23 * b3)
        - b1 * (a12 * m - a23 * a13)
        + a13 * (a12 * b3 - b2 * a13)
    ) / det
    ff = (
        a11 * (a22 * b3 - b2 * a23)
        - a12 * (a12 * b3 - b2 * a13)
        + b1 * (a12 * a23 - a22 * a13)
    ) / det
    r2 = 0.25 * (dd * dd + ee * ee) - ff
    if not r2 > 0:
        return None
    return complex(-0.5 * dd, -0.5 * ee), float(np.sqrt(r2))


def _circle_residual(pts: np.ndarray, center: complex, radius: float) -> float:
    return float(np.abs(np.abs(pts - center) - radius).max())


def fit_circline(points, tol_geom: float = DEFAULT_TOLS.tol_geom) -> Circline:
    """Fit a line or circle to a point set, or report that neither fits.

    Points are de-duplicated (1e-9 clustering) first; fitting is about the
    spectrum as a set.  Up to three distinct points always succeed; a line
    wins whenever both a line and a circle fit within tolerance, since the
    line is the stable limit of near-degenerate huge circles.
    """
    pts = dedupe_points(points)
    m = pts.size
    if m <= 2:
        anchor, u, res = _line_through(pts)
        return Circline(kind="line", anchor=anchor, direction=u, max_residual=res)

    scale = _diameter(pts)
    centroid = complex(pts.mean())
    w = (pts - centroid) / scale

    anchor_n, u, res_line_n = _line_through(w)
    anchor = complex(centroid + scale * anchor_n)
    # re-anchor to the closest point to the origin in original coordinates
    anchor = anchor - (np.conj(u) * anchor).real * u
    if res_line_n <= tol_geom or m == 3:
        if res_line_n <= tol_geom:
            return Circline(
                kind="line",
                anchor=complex(anchor),
                direction=u,
                max_residual=res_line_n * scale,
            )
        # three distinct non-collinear points: the unique circumcircle
        cc = _circumcircle(w[0], w[1], w[2])
        if cc is None:  # exactly collinear, caught above in exact arithmetic
            return Circline(
                kind="line", anchor=complex(anchor), direction=u, max_residual=res_line_n * scale
            )
        center_n, radius_n = cc
        res_n = _circle_residual(w, center_n, radius_n)
        return Circline(
            kind="circle",
            center=complex(centroid + scale * center_n),
            radius=radius_n * scale,
            max_residual=res_n * scale,
        )

    circ = _kasa_circle(w)
    if circ is not None:
        center_n, radius_n = circ
        res_circle_n = _circle_residual(w, center_n, radius_n)
        if res_circle_n <= tol_geom:
            return Circline(
                kind="circle",
                center=complex(centroid + scale * center_n),
                radius=radius_n * scale,
                max_residual=res_circle_n * scale,
            )
        best = min(res_line_n, res_circle_n)
    else:
        best = res_line_n
    return Circline(kind="none", max_residual=best * scale)


def canonical_decomposition(t, tols: Tolerances = DEFAULT_TOLS) -> CanonicalForm:
    """Split a normal matrix with circlinear spectrum as lam*I + mu*A.

    Line spectrum: A is Hermitian with the real line coordinates as
    eigenvalues.  Circle spectrum: eigenvalues are projected radially onto
    the fitted circle before forming A, so A is exactly unitary despite the
    fit residual.
    """
    a = require_square(as_cmatrix(t))
    dec = eig_normal(a, tols)  # raises NotNormalError
    fit = fit_circline(dec.eigenvalues, tols.tol_geom)
    z = dec.eigenframe
    if fit.kind == "line":
        coords = ((dec.eigenvalues - fit.anchor) / fit.direction).real
        herm = (z * coords) @ z.conj().T
        herm = 0.5 * (herm + herm.conj().T)
        return CanonicalForm(lam=fit.anchor, mu=fit.direction, kind="hermitian", a=herm)
    if fit.kind == "circle":
        rel = dec.eigenvalues - fit.center
        rel = rel / np.abs(rel)
        unit = (z * rel) @ z.conj().T
        return CanonicalForm(lam=fit.center, mu=fit.radius, kind="unitary", a=unit)
    raise NotCirclinearError(
        f"spectrum is not circlinear within tol_geom={tols.tol_geom} "
        f"(best residual {fit.max_residual:.3e})"
    )


def reconstruction_residual(t, form: CanonicalForm) -> float:
    """|| T - (lam I + mu A) || relative to max(1, ||T||)."""
    a = require_square(as_cmatrix(t))
    n = a.shape[0]
    recon = form.lam * np.eye(n) + form.mu * form.a
    return operator_norm(a - recon) / max(1.0, operator_norm(a))


def half_circle_containment(points) -> HalfCircleResult:
    """Decide whether some closed half-circle of the unit circle holds all points.

    Containment is equivalent to the largest circular gap between consecutive
    arguments being >= pi (within 1e-9); the witness rotation centers the
    occupied arc inside the right half-plane {Re >= 0}.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise EmptyInputError("no points given")
    if np.abs(np.abs(pts) - 1.0).max() > 1e-9:
        raise NotUnimodularError("all points must have modulus 1 within 1e-9")
    args = np.sort(np.angle(pts))
    if pts.size == 1:
        return HalfCircleResult(contained=True, witness_mu=complex(pts[0]))
    gaps = np.diff(args, append=args[0] + 2.0 * np.pi)
    j = int(np.argmax(gaps))
    gap = float(gaps[j])
    if gap < np.pi - 1e-9:
        return HalfCircleResult(contained=False, witness_mu=None)
    mid = args[j] + gap / 2.0 + np.pi  # midpoint of the occupied arc
    return HalfCircleResult(contained=True, witness_mu=complex(np.exp(1j * mid)))
