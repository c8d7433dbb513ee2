"""Schur complements and the block formulas for the inverse of a 2x2 block matrix.

For T = [[A, B], [C, D]] with A invertible, the complement of A is
T|A = D - C A^{-1} B, and the blocks of T^{-1} satisfy

    (T^{-1})_SE = (T|A)^{-1}
    (T^{-1})_SW = -(T|A)^{-1} C A^{-1}
    (T^{-1})_NE = -A^{-1} B (T|A)^{-1}

and, when B is square and invertible, (T^{-1})_NE = (T|B)^{-1} with
T|B = C - D B^{-1} A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    PivotNotSquareError,
    PivotSingularError,
    SingularMatrixError,
)
from .linalg import as_cmatrix, operator_norm, require_square, singular_values

PIVOTS = ("nw", "ne", "sw", "se")


@dataclass(frozen=True)
class BlockPartition:
    """The four blocks of a square matrix split after row/column k."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    k: int

    def assemble(self) -> np.ndarray:
        return np.block([[self.a, self.b], [self.c, self.d]])


def split_blocks(t, k: int) -> BlockPartition:
    m = require_square(as_cmatrix(t))
    n = m.shape[0]
    if not 1 <= k < n:
        raise DimensionMismatchError(f"need 1 <= k < n, got k={k}, n={n}")
    return BlockPartition(
        a=m[:k, :k].copy(), b=m[:k, k:].copy(), c=m[k:, :k].copy(), d=m[k:, k:].copy(), k=k
    )


def _invertible(m: np.ndarray) -> bool:
    sv = singular_values(m)
    return sv.size > 0 and sv[-1] > 1e-10 * sv[0]


def _solve(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    return np.linalg.solve(m, rhs)


def schur_complement(p: BlockPartition, pivot: str) -> np.ndarray:
    """Schur complement of the chosen pivot block.

    nw -> D - C A^{-1} B, ne -> C - D B^{-1} A, sw -> B - A C^{-1} D,
    se -> A - B D^{-1} C.  The pivot must be square and numerically
    invertible (smallest singular value above 1e-10 of the largest).
    """
    if pivot not in PIVOTS:
        raise ValueError(f"pivot must be one of {PIVOTS}")
    blk = {"nw": p.a, "ne": p.b, "sw": p.c, "se": p.d}[pivot]
    if blk.shape[0] != blk.shape[1]:
        raise PivotNotSquareError(f"{pivot} block has shape {blk.shape}")
    if not _invertible(blk):
        raise PivotSingularError(f"{pivot} block is numerically singular")
    if pivot == "nw":
        return p.d - p.c @ _solve(p.a, p.b)
    if pivot == "ne":
        return p.c - p.d @ _solve(p.b, p.a)
    if pivot == "sw":
        return p.b - p.a @ _solve(p.c, p.d)
    return p.a - p.b @ _solve(p.d, p.c)


def verify_block_inverse(t, k: int) -> float:
    """Largest relative residual of the block-inverse corner formulas.

    Computes T^{-1} directly and compares its SE, SW and NE blocks against
    the Schur-complement expressions (plus the (T|B)^{-1} form of the NE
    block when B is square and invertible).  Each residual is normalized by
    the corresponding block norm.
    """
    m = require_square(as_cmatrix(t))
    p = split_blocks(m, k)
    if not _invertible(m):
        raise SingularMatrixError("T is numerically singular")
    if not _invertible(p.a):
        raise SingularMatrixError("NW block is numerically singular")
    inv = np.linalg.inv(m)
    ip = split_blocks(inv, k)

    ta = schur_complement(p, "nw")
    if not _invertible(ta):
        raise SingularMatrixError("Schur complement of the NW block is singular")
    ta_inv = np.linalg.inv(ta)
    ca_inv = _solve(p.a.conj().T, p.c.conj().T).conj().T  # C A^{-1}
    a_inv_b = _solve(p.a, p.b)

    floor = np.finfo(float).eps * max(1.0, operator_norm(inv))

    def rel(diff: np.ndarray, ref: np.ndarray) -> float:
        return operator_norm(diff) / max(operator_norm(ref), floor)

    residuals = [
        rel(ip.d - ta_inv, ip.d),
        rel(ip.c + ta_inv @ ca_inv, ip.c),
        rel(ip.b + a_inv_b @ ta_inv, ip.b),
    ]
    if p.b.shape[0] == p.b.shape[1] and _invertible(p.b):
        tb = schur_complement(p, "ne")
        if _invertible(tb):
            residuals.append(rel(ip.b - np.linalg.inv(tb), ip.b))
    return max(residuals)
