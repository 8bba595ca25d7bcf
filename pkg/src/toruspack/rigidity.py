"""Strut frameworks from packings: infinitesimal flexes and proper stresses.

A packing graph becomes a strut framework (edges may not shrink to first
order).  Rigidity on the fixed torus is a pure feasibility question:

  flex:    v with (v_j - v_i) . e >= 0 for every strut, v_0 pinned;
  stress:  w <= -1 per strut with  sum_e w_e e_vec = 0 at every vertex.

Both are decided in exact rational arithmetic on a rationalized copy of the
strut vectors (denominator bound 1e12) and the witnesses re-checked against
the original floats, so a verdict is a certificate rather than a guess.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InconsistentLengths
from .exact_lp import feasible_nonnegative, maximize_free
from .lattice import DEFAULT_TOL
from .packing import Packing, PackingGraph, extract_graph, tangency_directions

RATIONALIZE_DENOMINATOR = 10**12
FLOAT_CHECK_TOL = 1e-6


@dataclass(frozen=True)
class StrutFramework:
    """Vertices with plane coordinates and struts with realized edge vectors.

    Loops are dropped at build time: a self-tangency constrains nothing to
    first order on the fixed torus.
    """

    vertices: tuple[tuple[float, float], ...]
    struts: tuple[tuple[int, int, tuple[float, float]], ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def strut_counts(self) -> list[int]:
        cnt = [0] * self.n
        for i, j, _ in self.struts:
            cnt[i] += 1
            cnt[j] += 1
        return cnt


@dataclass(frozen=True)
class FlexVector:
    velocities: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class Stress:
    coefficients: tuple[float, ...]


def build_framework(p: Packing, g: PackingGraph, tol: float = DEFAULT_TOL) -> StrutFramework:
    verts = tuple(
        tuple(c.canonical(p.m).coords()) for c in p.centers
    )
    struts = []
    target = 2 * p.radius
    for i, j, d in g.edges:
        if i == j:
            continue  # self-tangency: trivial strut inequality
        vec = (
            np.asarray(verts[j]) + d.vector(p.m) - np.asarray(verts[i])
        )
        length = float(np.hypot(*vec))
        if abs(length - target) > max(tol, 1e-12):
            raise InconsistentLengths(
                f"strut ({i},{j},{d.a},{d.b}) has length {length}, expected {target}"
            )
        struts.append((i, j, (float(vec[0]), float(vec[1]))))
    return StrutFramework(vertices=verts, struts=tuple(struts))


def _rationalize(x: float) -> Fraction:
    return Fraction(x).limit_denominator(RATIONALIZE_DENOMINATOR)


def find_nontrivial_flex(f: StrutFramework) -> FlexVector | None:
    """A nonzero velocity field satisfying every strut inequality, or None.

    Vertex 0 is pinned to quotient out the torus translations.  The cone
    {v : (v_j - v_i) . e >= 0} is probed by maximizing +-v_k inside the unit
    box for every coordinate k; any positive optimum certifies a flex.
    """
    n = f.n
    if n <= 1 or not f.struts:
        free = [v for v in range(n) if v != 0]
        if not free:
            return None
        # no struts at all: any motion of the unpinned vertices is a flex
        vel = [(0.0, 0.0)] * n
        vel[free[0]] = (0.0, 1.0)
        return FlexVector(tuple(vel))
    nv = 2 * (n - 1)  # vertex 0 pinned

    def var(vertex: int, coord: int) -> int:
        return 2 * (vertex - 1) + coord

    rows = []
    for i, j, e in f.struts:
        ex, ey = _rationalize(e[0]), _rationalize(e[1])
        row = [Fraction(0)] * nv
        if j != 0:
            row[var(j, 0)] -= ex
            row[var(j, 1)] -= ey
        if i != 0:
            row[var(i, 0)] += ex
            row[var(i, 1)] += ey
        rows.append(row)  #  -(v_j - v_i).e <= 0
    b = [Fraction(0)] * len(rows)
    for k in range(nv):
        for sign in (1, -1):
            c = [Fraction(0)] * nv
            c[k] = Fraction(sign)
            status, x, value = maximize_free(c, rows, b, Fraction(1))
            if status == "optimal" and value > 0:
                vel = [(0.0, 0.0)]
                for v in range(1, n):
                    vel.append((float(x[var(v, 0)]), float(x[var(v, 1)])))
                flex = FlexVector(tuple(vel))
                if verify_flex(f, flex):
                    return flex
    return None


def verify_flex(f: StrutFramework, flex: FlexVector, tol: float = FLOAT_CHECK_TOL) -> bool:
    v = np.asarray(flex.velocities, float)
    if np.abs(v).max() <= tol:
        return False
    for i, j, e in f.struts:
        if (v[j] - v[i]) @ np.asarray(e) < -tol:
            return False
    return True


def find_proper_stress(f: StrutFramework) -> Stress | None:
    """Equilibrium stresses with every strut coefficient <= -1, or None."""
    if not f.struts:
        return None
    n, m = f.n, len(f.struts)
    # equilibrium rows: sum over struts at v of w_e * (vector away from v) = 0
    A = [[Fraction(0)] * m for _ in range(2 * n)]
    for k, (i, j, e) in enumerate(f.struts):
        ex, ey = _rationalize(e[0]), _rationalize(e[1])
        A[2 * i][k] += ex
        A[2 * i + 1][k] += ey
        A[2 * j][k] -= ex
        A[2 * j + 1][k] -= ey
    # substitute w = -1 - s with s >= 0:  A s = -A 1
    b = [-sum(row) for row in A]
    s = feasible_nonnegative(A, b)
    if s is None:
        return None
    w = [-1.0 - float(si) for si in s]
    stress = Stress(tuple(w))
    return stress if verify_stress(f, stress) else None


def verify_stress(f: StrutFramework, stress: Stress, tol: float = FLOAT_CHECK_TOL) -> bool:
    if any(w > -1 + tol for w in stress.coefficients):
        return False
    resid = np.zeros((f.n, 2))
    scale = 0.0
    for (i, j, e), w in zip(f.struts, stress.coefficients):
        ev = np.asarray(e)
        resid[i] += w * ev
        resid[j] -= w * ev
        scale += abs(w) * float(np.hypot(*e))
    return float(np.abs(resid).max()) <= tol * max(scale, 1.0)


def has_halfplane_vertex(g: PackingGraph, p: Packing, tol: float = 1e-9) -> bool:
    """Some circle's tangency directions fit in a closed half-plane."""
    for v in range(g.vertex_count):
        dirs = tangency_directions(g, p, v)
        if len(dirs) == 0:
            return True
        ang = np.sort(np.arctan2(dirs[:, 1], dirs[:, 0]))
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
        if gaps.max() >= math.pi - tol:
            return True
    return False


def classify_packing(p: Packing, tol: float = DEFAULT_TOL) -> str:
    """'rigid-LMD', 'flexible' or 'free-circle' for the packing's framework."""
    g = extract_graph(p, tol=tol)
    f = build_framework(p, g, tol=tol)
    counts = f.strut_counts()
    if min(counts, default=0) < 3 or has_halfplane_vertex(g, p):
        return "free-circle"
    return "flexible" if find_nontrivial_flex(f) is not None else "rigid-LMD"
