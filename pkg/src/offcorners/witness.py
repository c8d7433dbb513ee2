"""Projections certifying failure of the common-norm / common-rank properties.

Two constructions are provided.  For normal matrices whose spectrum is not
contained in any line or circle, a deterministic pipeline picks four
non-circlinear eigenvalues, sends three of them to 0, 1, 2 by a Moebius map,
and conjugates an explicit 4x4 unitary whose off-diagonal corners have
determinants 0 and nonzero.  For arbitrary matrices, a seeded hill-climb
searches the Grassmannian of rank-k projections for a norm gap.

A Witness is evidence, never trusted state: every witness returned here has
been re-measured from scratch through ``corners.corner_pair``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .circline import dedupe_points, fit_circline
from .corners import CornerReport, Projection, corner_pair, projection_from_frame
from .errors import (
    BetaRealError,
    DeltaDegenerateError,
    DeltaRealError,
    DimensionMismatchError,
    FullOrZeroRankError,
    VerificationFailedError,
)
from .linalg import DEFAULT_TOLS, Tolerances, as_cmatrix, eig_normal, require_square
from .moebius import moebius_three_point


@dataclass(frozen=True)
class T2Parameters:
    """Parameters (sigma, gamma, theta) of the explicit 4x4 corner-gap unitary.

    zeta is the root of zeta^2 - beta*zeta + 1 = 0 with |zeta| > 1; then
    theta = arg(zeta), sigma^2 = |zeta|/(1+|zeta|), gamma^2 = 1/(1+|zeta|),
    so that e^{i theta} sigma^2/gamma^2 + gamma^2/(e^{i theta} sigma^2) = beta.
    """

    beta: complex
    zeta: complex
    sigma: float
    gamma: float
    theta: float

    def __post_init__(self):
        if abs(self.sigma**2 + self.gamma**2 - 1.0) > 1e-12:
            raise BetaRealError("sigma^2 + gamma^2 must equal 1")
        if abs(self.sigma - self.gamma) <= 1e-9:
            raise BetaRealError("beta is too close to real: sigma and gamma nearly equal")
        if abs(self.theta - np.pi * round(self.theta / np.pi)) <= 1e-9:
            raise BetaRealError("beta is too close to real: theta nearly a multiple of pi")
        ratio = np.exp(1j * self.theta) * self.sigma**2 / self.gamma**2
        if abs(ratio + 1.0 / ratio - self.beta) > 1e-9 * max(1.0, abs(self.beta)):
            raise BetaRealError("parameters do not reproduce beta")


@dataclass(frozen=True)
class Witness:
    """A projection together with the measured corner gaps that certify failure."""

    projection: Projection
    rank_ne: int
    rank_sw: int
    norm_ne: float
    norm_sw: float
    kind: str  # "rank" | "norm" | "both"


def _gap_kind(rep: CornerReport, tols: Tolerances) -> Optional[str]:
    rank_gap = rep.rank_ne != rep.rank_sw
    norm_gap = abs(rep.norm_ne - rep.norm_sw) > tols.tol_gap
    if rank_gap and norm_gap:
        return "both"
    if rank_gap:
        return "rank"
    if norm_gap:
        return "norm"
    return None


def _witness_from_report(p: Projection, rep: CornerReport, kind: str) -> Witness:
    return Witness(
        projection=p,
        rank_ne=rep.rank_ne,
        rank_sw=rep.rank_sw,
        norm_ne=rep.norm_ne,
        norm_sw=rep.norm_sw,
        kind=kind,
    )


def solve_t2_parameters(beta) -> T2Parameters:
    """Solve zeta + 1/zeta = beta and split |zeta| into sigma, gamma, theta.

    Fixing the root with |zeta| > 1 makes the output reproducible and keeps
    sigma > gamma, which improves determinant conditioning downstream.
    """
    beta = complex(beta)
    if abs(beta.imag) <= 1e-9 * (1.0 + abs(beta)):
        raise BetaRealError("beta must have a nonzero imaginary part")
    s = np.sqrt(complex(beta * beta - 4.0))
    if (np.conj(beta) * s).real < 0.0:
        s = -s
    zeta = (beta + s) / 2.0  # the larger-modulus root; the other is 1/zeta
    if abs(zeta) < 1.0:
        zeta = 1.0 / zeta
    mod = abs(zeta)
    sigma = float(np.sqrt(mod / (1.0 + mod)))
    gamma = float(np.sqrt(1.0 / (1.0 + mod)))
    return T2Parameters(
        beta=beta, zeta=complex(zeta), sigma=sigma, gamma=gamma, theta=float(np.angle(zeta))
    )


def build_t2_unitary(params: T2Parameters) -> np.ndarray:
    """The explicit 4x4 corner-gap unitary assembled from two block rotations.

    Composing the theta rotation first and the sigma/gamma mixing second is
    the orientation for which det(ne) vanishes while det(sw) stays away from
    zero on diag(0, 1, 2, 2 - 8/(beta+6)).
    """
    sig, gam = params.sigma, params.gamma
    v = np.array(
        [
            [sig, 0.0, gam, 0.0],
            [0.0, gam, 0.0, sig],
            [gam, 0.0, -sig, 0.0],
            [0.0, sig, 0.0, -gam],
        ],
        dtype=np.complex128,
    )
    r = 1.0 / np.sqrt(2.0)
    e = np.exp(1j * params.theta)
    w = np.array(
        [
            [r, e * r, 0.0, 0.0],
            [r, -e * r, 0.0, 0.0],
            [0.0, 0.0, r, r],
            [0.0, 0.0, r, -r],
        ],
        dtype=np.complex128,
    )
    return w @ v


def t2_determinant_gap(params: T2Parameters) -> complex:
    """Closed form for det(ne) - det(sw) of the conjugated diagonal model."""
    return (
        4j
        * (params.gamma**4 - params.sigma**4)
        * np.sin(params.theta)
        / (params.beta + 6.0)
    )


def witness_4x4(delta, tols: Tolerances = DEFAULT_TOLS) -> tuple[np.ndarray, Witness]:
    """Model matrix diag(0, 1, 2, delta) with a measured rank-gap projection.

    delta must be genuinely non-real; the returned witness satisfies
    rank(ne) <= 1 < 2 = rank(sw) plus a norm gap above tol_gap, both measured
    from scratch.
    """
    delta = complex(delta)
    if abs(delta - 2.0) <= 1e-9 * (1.0 + abs(delta)):
        raise DeltaDegenerateError("delta too close to 2: beta = 8/(2-delta) - 6 blows up")
    for bad in (0.0, 1.0):
        if abs(delta - bad) <= 1e-9 * (1.0 + abs(delta)):
            raise DeltaDegenerateError(f"delta too close to {bad}: spectrum degenerates")
    if abs(delta.imag) <= 1e-9 * (1.0 + abs(delta)):
        raise DeltaRealError("delta must have a nonzero imaginary part")
    beta = 8.0 / (2.0 - delta) - 6.0
    params = solve_t2_parameters(beta)
    u = build_t2_unitary(params)
    t = np.diag(np.array([0.0, 1.0, 2.0, delta], dtype=np.complex128))
    p = projection_from_frame(u[:, :2])
    rep = corner_pair(t, p, tols)
    ok = (
        rep.rank_ne <= 1
        and rep.rank_sw == 2
        and abs(rep.norm_ne - rep.norm_sw) > tols.tol_gap
    )
    if not ok:
        raise VerificationFailedError(
            f"constructed projection shows no measurable gap for delta={delta}"
        )
    return t, _witness_from_report(p, rep, "both")


def falsify_deterministic(t, tols: Tolerances = DEFAULT_TOLS) -> Optional[Witness]:
    """Deterministic witness for a normal matrix, or None when none can exist.

    Returns None exactly when the de-duplicated spectrum is circlinear.
    Otherwise the first non-circlinear eigenvalue quadruple (eigenvalues
    sorted lexicographically, subsets in lexicographic index order) is mapped
    through the three-point Moebius normalization, the 4x4 model witness is
    pulled back along one unit eigenvector per chosen eigenvalue, and the
    resulting projection is measured against the original matrix.

    VerificationFailedError signals a numerical breakdown, never a
    mathematical outcome: the construction guarantees a gap.
    """
    a = require_square(as_cmatrix(t))
    if a.shape[0] < 4:
        raise DimensionMismatchError("deterministic falsification needs n >= 4")
    dec = eig_normal(a, tols)
    reps = dedupe_points(dec.eigenvalues)
    if reps.size < 4:
        return None
    if fit_circline(reps, tols.tol_geom).kind != "none":
        return None
    idx = _kernels.noncircline_scan(
        np.ascontiguousarray(reps.real), np.ascontiguousarray(reps.imag), tols.tol_geom
    )
    if idx[0] < 0:
        raise VerificationFailedError(
            "full spectrum fails the circline fit but every quadruple passes; "
            "tol_geom sits on a decision boundary"
        )
    lam = reps[list(idx)]
    m_o = moebius_three_point(lam[:3], (0.0, 1.0, 2.0))
    delta = m_o(lam[3])
    try:
        _, model = witness_4x4(delta, tols)
    except (DeltaRealError, DeltaDegenerateError, BetaRealError) as exc:
        raise VerificationFailedError(
            f"quadruple {lam} maps to delta={delta} too close to the real line"
        ) from exc
    u2 = model.projection.frame  # 4 x 2

    # invariance pullback check: the same projection must already gap the
    # un-normalized diagonal model diag(lam)
    rep4 = corner_pair(np.diag(lam), model.projection, tols)
    if rep4.rank_ne == rep4.rank_sw:
        raise VerificationFailedError("rank gap did not survive the Moebius pullback")

    cols: list[int] = []
    for z in lam:
        order = np.argsort(np.abs(dec.eigenvalues - z), kind="stable")
        pick = next(int(j) for j in order if int(j) not in cols)
        cols.append(pick)
    eframe = dec.eigenframe[:, cols]
    p = projection_from_frame(eframe @ u2)
    rep = corner_pair(a, p, tols)
    kind = _gap_kind(rep, tols)
    if kind != "both":
        raise VerificationFailedError(
            "constructed witness failed re-verification against the original matrix"
        )
    return _witness_from_report(p, rep, kind)


def falsify_search(
    t,
    k: int,
    restarts: int = 32,
    steps: int = 200,
    seed: int = 0,
    tols: Tolerances = DEFAULT_TOLS,
) -> Optional[Witness]:
    """Seeded Grassmannian search for a corner norm gap; None if none is found.

    Maximizes |norm(ne) - norm(sw)| over rank-k projections with ``restarts``
    independent hill climbs of ``steps`` multiplicative steps each
    (per-restart RNG streams derive from (seed, restart index); ties go to
    the lower restart index).  A rank gap encountered anywhere along the way
    is kept as a fallback witness even when no norm gap clears tol_gap.
    """
    a = require_square(as_cmatrix(t))
    n = a.shape[0]
    if not 1 <= k < n:
        raise FullOrZeroRankError(f"need 1 <= k < n, got k={k}, n={n}")
    ac = np.ascontiguousarray(a)
    best_gap = -1.0
    best_q = None
    rank_q = None
    for r in range(restarts):
        rng = np.random.default_rng([int(seed), r])
        g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        q0 = np.ascontiguousarray(np.linalg.qr(g, mode="complete")[0])
        nre = rng.standard_normal((steps, n, n))
        nim = rng.standard_normal((steps, n, n))
        gap, q_best, found_rank, q_rank = _kernels.search_restart(
            ac, q0, k, nre, nim, 0.1, 1e-6, tols.tol_rank
        )
        if gap > best_gap:
            best_gap = gap
            best_q = q_best
        if rank_q is None and found_rank:
            rank_q = q_rank
    if best_q is not None and best_gap > tols.tol_gap:
        p = projection_from_frame(best_q[:, :k])
        rep = corner_pair(a, p, tols)
        kind = _gap_kind(rep, tols)
        if kind in ("norm", "both"):
            return _witness_from_report(p, rep, kind)
    if rank_q is not None:
        p = projection_from_frame(rank_q[:, :k])
        rep = corner_pair(a, p, tols)
        kind = _gap_kind(rep, tols)
        if kind is not None:
            return _witness_from_report(p, rep, kind)
    return None


def verify_witness(t, witness: Witness, tols: Tolerances = DEFAULT_TOLS) -> Witness:
    """Re-measure a witness from scratch (fresh complement, fresh corners).

    Raises VerificationFailedError when the projection no longer shows any
    gap at the given tolerances.
    """
    a = require_square(as_cmatrix(t))
    p = projection_from_frame(witness.projection.frame)
    rep = corner_pair(a, p, tols)
    kind = _gap_kind(rep, tols)
    if kind is None:
        raise VerificationFailedError("witness does not re-verify: no rank or norm gap")
    return _witness_from_report(p, rep, kind)
