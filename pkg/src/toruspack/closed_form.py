"""Closed-form optimal radii and circle centers for 2, 3 and 4 circles.

Each moduli region carries its own radius formula; the center lists are
expressed through the auxiliary quantity R = sqrt(16 r^2 - 1) (real since
every optimal radius is at least 1/4).  In the topmost region of each strip
the radius is 1/2, the optimum is highly non-unique, and a canonical layered
self-tangent witness is returned instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import ModuliPoint, TorusPoint
from .regions import RegionId, SQRT3, classify, region_count


def _r2_1(x: float, y: float) -> float:
    return math.sqrt(x * x + y * y) * math.sqrt((x - 1) ** 2 + y * y) / (4 * y)


def _r3_1(x: float, y: float) -> float:
    return (
        math.sqrt(x * x + y * y)
        * math.sqrt((x + 0.5) ** 2 + (y - SQRT3 / 2) ** 2)
        / (2 * (y + SQRT3 * x))
    )


def _r3_2(x: float, y: float) -> float:
    inner = math.sqrt(max(3 + 4 * y * y - 12 * x * x, 0.0))
    return math.sqrt(9 * x * x + (y - inner) ** 2) / 6


def _r4_1(x: float, y: float) -> float:
    return (
        math.sqrt(x * x + y * y)
        * math.sqrt((x - 0.5) ** 2 + (y - SQRT3 / 2) ** 2)
        / (2 * (y - SQRT3 * x))
    )


def _r4_2(x: float, y: float) -> float:
    a = 2 * (y * SQRT3 - x) ** 2 - ((x - 1) * SQRT3 + y) ** 2 + 3
    b = (x * x + y * y) * ((x - 1.5) ** 2 + (y - SQRT3 / 2) ** 2)
    disc = math.sqrt(max(a * a - 16 * b, 0.0))
    return math.sqrt(max(a - disc, 0.0)) / (4 * math.sqrt(2))


def _r4_3(x: float, y: float) -> float:
    a = 9 + 5 * y * y - (2 * x - 1) ** 2
    b = ((x - 2) ** 2 + y * y) * ((x + 1) ** 2 + y * y)
    disc = math.sqrt(max(a * a - 16 * b, 0.0))
    return math.sqrt(max(a - disc, 0.0)) / (8 * math.sqrt(2))


_BRANCHES = {
    2: [_r2_1, lambda x, y: 0.5],
    3: [_r3_1, _r3_2, lambda x, y: 0.5],
    4: [_r4_1, _r4_2, _r4_3, lambda x, y: 0.5],
}


def radius_branch(n: int, index: int, x: float, y: float) -> float:
    """Evaluate the radius formula of one region without classifying.

    Returns nan where the branch degenerates (0/0 at pinched corners of its
    region's closure).
    """
    try:
        return _BRANCHES[n][index - 1](x, y)
    except ZeroDivisionError:
        return math.nan


def optimal_radius(n: int, m: ModuliPoint) -> float:
    """Largest radius of n equal circles packable on the torus m."""
    region = classify(n, m)
    idx = region.index
    # Branches agree on shared boundaries; prefer the lower-indexed branch
    # there, except where it degenerates (0/0 at pinched corners).
    if "lower" in region.boundary_flags and idx > 1:
        idx -= 1
    r = radius_branch(n, idx, m.x, m.y)
    if not math.isfinite(r) or r < 0.25 - 1e-9:
        for alt in (idx + 1, idx - 1):
            if 1 <= alt <= region_count(n):
                r_alt = radius_branch(n, alt, m.x, m.y)
                if math.isfinite(r_alt) and r_alt >= 0.25 - 1e-9:
                    return r_alt
    return r


@dataclass(frozen=True)
class OptimalSolution:
    n: int
    m: ModuliPoint
    region: RegionId
    radius: float
    centers: tuple[TorusPoint, ...]
    aux_R: float


def layered_centers(n: int) -> list[TorusPoint]:
    """Radius-1/2 witness: one self-tangent layer per circle, consecutive
    layers doubly tangent, stacked as in the triangular close packing."""
    return [TorusPoint(0.5 * ((k % 2)), k * SQRT3 / 2) for k in range(n)]


def optimal_centers(n: int, m: ModuliPoint) -> OptimalSolution:
    """Centers of an optimal arrangement (first circle at the origin).

    In the free region the optimum is far from unique; the canonical layered
    witness is returned, with the single top tangency at the wrap angle
    appearing exactly on the region's lower boundary.
    """
    region = classify(n, m)
    if region.is_free:
        centers = layered_centers(n)
        r = 0.5
    else:
        r = optimal_radius(n, m)
        R = math.sqrt(max(16 * r * r - 1.0, 0.0))
        if n == 2:
            pts = [(0.0, 0.0), (0.5, R / 2)]
        elif n == 3:
            if region.index == 1:
                pts = [
                    (0.0, 0.0),
                    (0.5, -R / 2),
                    ((SQRT3 * R + 1) / 4, (SQRT3 - R) / 4),
                ]
            else:
                pts = [(0.0, 0.0), (0.5, -R / 2), (0.5, R / 2)]
        else:
            if region.index in (1, 2):
                pts = [
                    (0.0, 0.0),
                    (0.5, R / 2),
                    ((1 - SQRT3 * R) / 4, (R + SQRT3) / 4),
                    ((3 - SQRT3 * R) / 4, (3 * R + SQRT3) / 4),
                ]
            else:
                pts = [(0.0, 0.0), (0.5, R / 2), (0.0, R), (0.5, 3 * R / 2)]
        centers = [TorusPoint(u, w) for u, w in pts]
    centers = [c.canonical(m) for c in centers]
    return OptimalSolution(
        n=n,
        m=m,
        region=region,
        radius=r,
        centers=tuple(centers),
        aux_R=math.sqrt(max(16 * r * r - 1.0, 0.0)),
    )


def tangency_census(n: int, m: ModuliPoint, tol: float = 1e-9) -> int:
    """Number of edges of the optimal packing's graph at m."""
    from .packing import Packing, extract_graph

    sol = optimal_centers(n, m)
    p = Packing(m=m, centers=sol.centers, radius=sol.radius)
    return len(extract_graph(p, tol=tol).edges)
