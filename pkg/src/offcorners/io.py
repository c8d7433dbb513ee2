"""JSON wire formats: matrix files, classification reports, witness reports.

Complex scalars travel as [re, im] pairs (locale-proof and trivial to parse
in any language).  Rendering uses Python's shortest round-trip float repr,
so parsing a rendered document and re-rendering it reproduces the bytes.
"""

from __future__ import annotations

import json
from typing import Any, Optional

import numpy as np

from .circline import CanonicalForm, Circline
from .classify import ClassificationReport
from .errors import OffCornersError
from .linalg import Tolerances
from .witness import Witness

__version__ = "0.1.0"


class MatrixFileError(OffCornersError):
    """Malformed matrix file."""


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def matrix_to_obj(m) -> dict:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise MatrixFileError("matrix must be 2-D")
    rows, cols = a.shape
    return {
        "rows": int(rows),
        "cols": int(cols),
        "data": [_pair(z) for z in a.ravel()],
    }


def matrix_from_obj(obj: Any) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFileError("matrix file must be a JSON object")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise MatrixFileError(f"matrix file is missing the '{key}' field")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise MatrixFileError("'rows' and 'cols' must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise MatrixFileError(f"'data' must hold exactly rows*cols = {rows * cols} entries")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, entry in enumerate(data):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
        ):
            raise MatrixFileError(f"entry {i} is not a [re, im] pair of numbers")
        out[i] = complex(entry[0], entry[1])
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise MatrixFileError("matrix entries must be finite")
    return out.reshape(rows, cols)


def load_matrix(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path} is not valid JSON: {exc}") from exc
    return matrix_from_obj(obj)


def dump_json(obj: Any) -> str:
    """Canonical rendering: two-space indent, insertion key order, no NaN."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def tolerances_to_obj(tols: Tolerances) -> dict:
    return {
        "tol_normal": tols.tol_normal,
        "tol_rank": tols.tol_rank,
        "tol_geom": tols.tol_geom,
        "tol_gap": tols.tol_gap,
    }


def circline_to_obj(c: Circline) -> dict:
    return {
        "kind": c.kind,
        "anchor": None if c.anchor is None else _pair(c.anchor),
        "direction": None if c.direction is None else _pair(c.direction),
        "center": None if c.center is None else _pair(c.center),
        "radius": None if c.radius is None else float(c.radius),
        "max_residual": float(c.max_residual),
    }


def canonical_to_obj(form: Optional[CanonicalForm]) -> Optional[dict]:
    if form is None:
        return None
    return {
        "lambda": _pair(form.lam),
        "mu": _pair(form.mu),
        "kind": form.kind,
        "a": matrix_to_obj(form.a),
    }


def witness_to_obj(w: Optional[Witness]) -> Optional[dict]:
    if w is None:
        return None
    return {
        "frame": matrix_to_obj(w.projection.frame),
        "rank_ne": int(w.rank_ne),
        "rank_sw": int(w.rank_sw),
        "norm_ne": float(w.norm_ne),
        "norm_sw": float(w.norm_sw),
        "kind": w.kind,
    }


def report_to_obj(report: ClassificationReport, seed: int) -> dict:
    return {
        "tool": "offcorners",
        "version": __version__,
        "seed": int(seed),
        "n": int(report.n),
        "normal": bool(report.normal),
        "verdict_cn": report.verdict_cn,
        "verdict_cr": report.verdict_cr,
        "tolerances": tolerances_to_obj(report.tolerances),
        "spectrum": [_pair(z) for z in report.spectrum],
        "circline": circline_to_obj(report.circline),
        "canonical": canonical_to_obj(report.canonical),
        "witness": witness_to_obj(report.witness),
    }


def report_to_text(report: ClassificationReport, seed: int) -> str:
    """Human-readable rendering; includes the tolerances so a "fails" verdict
    is always interpretable."""
    lines = [
        f"offcorners {__version__} (seed {seed})",
        f"dimension      : {report.n}",
        f"normal         : {'yes' if report.normal else 'no'}",
        f"common norm    : {report.verdict_cn}",
        f"common rank    : {report.verdict_cr}",
        "tolerances     : "
        + ", ".join(f"{k}={v:g}" for k, v in tolerances_to_obj(report.tolerances).items()),
        "spectrum       : "
        + ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in report.spectrum),
    ]
    c = report.circline
    if c.kind == "line":
        lines.append(
            f"spectrum shape : line through {c.anchor.real:.6g}{c.anchor.imag:+.6g}i, "
            f"direction {c.direction.real:.6g}{c.direction.imag:+.6g}i "
            f"(residual {c.max_residual:.2e})"
        )
    elif c.kind == "circle":
        lines.append(
            f"spectrum shape : circle center {c.center.real:.6g}{c.center.imag:+.6g}i, "
            f"radius {c.radius:.6g} (residual {c.max_residual:.2e})"
        )
    else:
        lines.append("spectrum shape : neither a line nor a circle")
    if report.canonical is not None:
        f = report.canonical
        lines.append(
            f"canonical form : lambda={f.lam.real:.6g}{f.lam.imag:+.6g}i, "
            f"mu={f.mu.real:.6g}{f.mu.imag:+.6g}i, carrier {f.kind}"
        )
    if report.witness is not None:
        w = report.witness
        lines.append(
            f"witness        : rank {w.rank_ne} vs {w.rank_sw}, "
            f"norms {w.norm_ne:.6g} vs {w.norm_sw:.6g} ({w.kind} gap)"
        )
    return "\n".join(lines) + "\n"
