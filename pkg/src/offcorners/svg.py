"""Deterministic SVG rendering of spectra, fitted circlines and numerical
range boundaries.

Output is plain SVG 1.1 text assembled with fixed float formatting, so the
same input and options always produce byte-identical files.  The viewBox is
the bounding square of the drawn data plus a 10% margin; the y axis is
flipped so the complex plane has its usual orientation.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .circline import Circline


def _f(v: float) -> str:
    s = f"{float(v):.8g}"
    return "0" if s == "-0" else s


def _bounds(points: np.ndarray) -> tuple[float, float, float]:
    xs, ys = points.real, points.imag
    cx = 0.5 * (xs.min() + xs.max())
    cy = 0.5 * (ys.min() + ys.max())
    half = 0.5 * max(xs.max() - xs.min(), ys.max() - ys.min(), 0.5)
    return float(cx), float(cy), float(half) * 1.1


def render_svg(
    spectrum: np.ndarray,
    circline: Optional[Circline] = None,
    boundary: Optional[np.ndarray] = None,
    note: Optional[str] = None,
) -> str:
    """Render eigenvalue dots, the fitted circline, the numerical range
    boundary polygon and a unit circle reference as one SVG document."""
    spectrum = np.asarray(spectrum, dtype=np.complex128).ravel()
    anchors = [spectrum, np.array([1.0, -1.0, 1j, -1j])]
    if boundary is not None and len(boundary):
        anchors.append(np.asarray(boundary, dtype=np.complex128).ravel())
    if circline is not None and circline.kind == "circle":
        c, r = circline.center, circline.radius
        anchors.append(np.array([c + r, c - r, c + 1j * r, c - 1j * r]))
    cx, cy, half = _bounds(np.concatenate(anchors))

    x0, y0 = cx - half, -cy - half  # svg y axis points down
    size = 2.0 * half
    sw = half / 160.0
    dot = half / 45.0

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(size)} {_f(size)}">',
        f'<circle cx="0" cy="0" r="1" fill="none" stroke="#bbbbbb" '
        f'stroke-width="{_f(sw)}" stroke-dasharray="{_f(4 * sw)} {_f(4 * sw)}"/>',
    ]

    if circline is not None and circline.kind == "circle":
        parts.append(
            f'<circle cx="{_f(circline.center.real)}" cy="{_f(-circline.center.imag)}" '
            f'r="{_f(circline.radius)}" fill="none" stroke="#2166ac" '
            f'stroke-width="{_f(1.5 * sw)}"/>'
        )
    elif circline is not None and circline.kind == "line":
        u, a = circline.direction, circline.anchor
        corners = [complex(cx - half, cy - half), complex(cx - half, cy + half),
                   complex(cx + half, cy - half), complex(cx + half, cy + half)]
        ts = [float((np.conj(u) * (corner - a)).real) for corner in corners]
        p1 = a + min(ts) * u
        p2 = a + max(ts) * u
        parts.append(
            f'<line x1="{_f(p1.real)}" y1="{_f(-p1.imag)}" x2="{_f(p2.real)}" '
            f'y2="{_f(-p2.imag)}" stroke="#2166ac" stroke-width="{_f(1.5 * sw)}"/>'
        )

    if boundary is not None and len(boundary):
        pts = " ".join(f"{_f(z.real)},{_f(-z.imag)}" for z in np.asarray(boundary).ravel())
        parts.append(
            f'<polygon points="{pts}" fill="none" stroke="#1a9641" '
            f'stroke-width="{_f(1.5 * sw)}"/>'
        )

    for z in spectrum:
        parts.append(f'<circle cx="{_f(z.real)}" cy="{_f(-z.imag)}" r="{_f(dot)}" fill="#d7191c"/>')

    if note:
        parts.append(
            f'<text x="{_f(x0 + 2 * sw * 8)}" y="{_f(y0 + half / 8)}" '
            f'font-size="{_f(half / 12)}" fill="#444444">{note}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
