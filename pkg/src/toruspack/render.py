"""Deterministic SVG figures: packings in the fundamental domain, and the
moduli-strip region diagrams.

No timestamps, no randomness; numbers are printed with fixed precision so
identical inputs yield byte-identical documents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import ModuliPoint
from .packing import Packing, PackingGraph
from .regions import SQRT3, boundary_curve, free_boundary_value, region_count

_FMT = "{:.6f}"


def _f(x: float) -> str:
    out = _FMT.format(float(x))
    return "0.000000" if out == "-0.000000" else out


@dataclass(frozen=True)
class FigureSpec:
    kind: str = "packing"  # or "moduli"
    size: int = 480
    stroke_width: float = 1.5
    labels: bool = True

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError("figure size must be positive")


def _svg_header(width: float, height: float) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">\n'
    )


def render_packing(p: Packing, g: PackingGraph, spec: FigureSpec = FigureSpec()) -> str:
    """The fundamental domain, every circle lift meeting it, tangency edges
    and circle labels."""
    m = p.m
    v1 = np.array([1.0, 0.0])
    v2 = np.array([m.x, m.y])
    corners = np.array([[0, 0], v1, v1 + v2, v2, [0, 0]], float)
    lo = corners.min(axis=0) - p.radius - 0.05
    hi = corners.max(axis=0) + p.radius + 0.05
    scale = spec.size / max(hi - lo)
    H = (hi[1] - lo[1]) * scale

    def X(q):
        return (q[0] - lo[0]) * scale

    def Y(q):
        return H - (q[1] - lo[1]) * scale  # flip to math orientation

    parts = [_svg_header((hi[0] - lo[0]) * scale, H)]
    parts.append(
        '<rect width="100%" height="100%" fill="white"/>\n'
    )
    # circle lifts whose disk meets the closed fundamental domain
    lifts = []
    for idx, c in enumerate(p.centers):
        base = c.canonical(m).coords()
        for a in range(-2, 3):
            for b in range(-2, 3):
                q = base + a * v1 + b * v2
                if _disk_meets_domain(q, p.radius, m):
                    lifts.append((idx, q))
    for idx, q in sorted(lifts, key=lambda t: (t[0], round(t[1][0], 9), round(t[1][1], 9))):
        parts.append(
            f'<circle cx="{_f(X(q))}" cy="{_f(Y(q))}" r="{_f(p.radius * scale)}" '
            f'fill="#dce9f5" stroke="#39618f" stroke-width="{_f(spec.stroke_width)}"/>\n'
        )
    # fundamental domain outline
    pts = " ".join(f"{_f(X(q))},{_f(Y(q))}" for q in corners)
    parts.append(
        f'<polyline points="{pts}" fill="none" stroke="black" '
        f'stroke-width="{_f(spec.stroke_width)}"/>\n'
    )
    # tangency edges from each canonical representative
    for i, j, d in g.edges:
        a = p.centers[i].canonical(m).coords()
        b = p.centers[j].canonical(m).coords() + d.vector(m)
        parts.append(
            f'<line x1="{_f(X(a))}" y1="{_f(Y(a))}" x2="{_f(X(b))}" y2="{_f(Y(b))}" '
            f'stroke="#c0392b" stroke-width="{_f(spec.stroke_width)}"/>\n'
        )
    if spec.labels:
        for idx, c in enumerate(p.centers):
            q = c.canonical(m).coords()
            parts.append(
                f'<text x="{_f(X(q))}" y="{_f(Y(q))}" font-size="{_f(scale * 0.08)}" '
                f'text-anchor="middle" dominant-baseline="middle">{idx}</text>\n'
            )
    parts.append("</svg>\n")
    return "".join(parts)


def _dom_coord(q, m: ModuliPoint):
    t2 = q[1] / m.y
    t1 = q[0] - t2 * m.x
    return t1, t2


def _disk_meets_domain(q, r, m: ModuliPoint) -> bool:
    """Disk of radius r at q intersects the closed fundamental domain."""
    corners = np.array([[0, 0], [1, 0], [1 + m.x, m.y], [m.x, m.y]], float)
    t1, t2 = _dom_coord(q, m)
    if 0 <= t1 <= 1 and 0 <= t2 <= 1:
        return True
    best = math.inf
    for k in range(4):
        a, b = corners[k], corners[(k + 1) % 4]
        ab = b - a
        t = float(np.clip((q - a) @ ab / (ab @ ab), 0.0, 1.0))
        best = min(best, float(np.hypot(*(a + t * ab - q))))
    return best <= r + 1e-12


_CURVE_SAMPLES = 512


def render_moduli(n: int, spec: FigureSpec = FigureSpec(kind="moduli")) -> str:
    """The unoriented moduli strip with the region boundary curves, region
    labels, and markers at the triangular-close-packing boundary tori."""
    k = region_count(n)
    y_top = free_boundary_value(n, 0.25) + 0.8
    lo = np.array([-0.06, 0.6])
    hi = np.array([0.56, y_top])
    scale = spec.size / (hi[1] - lo[1])
    W = (hi[0] - lo[0]) * scale
    H = (hi[1] - lo[1]) * scale

    def X(x):
        return (x - lo[0]) * scale

    def Y(y):
        return H - (y - lo[1]) * scale

    parts = [_svg_header(W, H), '<rect width="100%" height="100%" fill="white"/>\n']
    # strip walls
    for x in (0.0, 0.5):
        parts.append(
            f'<line x1="{_f(X(x))}" y1="{_f(Y(lo[1]))}" x2="{_f(X(x))}" y2="{_f(Y(hi[1]))}" '
            'stroke="#888888" stroke-width="1.0"/>\n'
        )
    # boundary curves (index 0 = strip bottom, then the region tops)
    curves = [lambda x: math.sqrt(max(1 - x * x, 0.0))] + [
        (lambda idx: (lambda x: boundary_curve(n, idx, x)))(i) for i in range(1, k)
    ]
    for fn in curves:
        xs = np.linspace(0.0, 0.5, _CURVE_SAMPLES)
        pts = " ".join(f"{_f(X(x))},{_f(Y(fn(float(x))))}" for x in xs)
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="black" '
            f'stroke-width="{_f(spec.stroke_width)}"/>\n'
        )
    if spec.labels:
        for i in range(1, k + 1):
            xm = 0.25
            ylo = curves[i - 1](xm)
            yhi = boundary_curve(n, i, xm) if i < k else ylo + 1.0
            ym = (ylo + yhi) / 2
            parts.append(
                f'<text x="{_f(X(xm))}" y="{_f(Y(ym))}" font-size="16" '
                f'text-anchor="middle">R{i}_{n}</text>\n'
            )
    # unfilled markers: tori whose optimum is the triangular close packing
    for x, y in _triangular_markers(n):
        parts.append(
            f'<circle cx="{_f(X(x))}" cy="{_f(Y(y))}" r="4.0" fill="white" '
            'stroke="black" stroke-width="1.2"/>\n'
        )
    parts.append("</svg>\n")
    return "".join(parts)


def _triangular_markers(n: int) -> list[tuple[float, float]]:
    """Boundary tori where each circle touches six others."""
    if n == 2:
        return [(0.0, SQRT3), (0.5, SQRT3 / 2)]
    if n == 3:
        return [(0.5, SQRT3 / 2), (0.5, 3 * SQRT3 / 2)]
    return [(0.5, SQRT3 / 2), (0.0, 2 / SQRT3), (0.0, 2 * SQRT3)]
