"""Small dense exact-rational linear programs via tableau simplex.

The rigidity certificates need yes/no answers that survive scrutiny, so
everything here runs over `fractions.Fraction` with Bland's rule (no
cycling, no tolerance knobs).  Problem sizes are tiny (at most a few dozen
variables and constraints), so the classic dense tableau is plenty.
"""
from __future__ import annotations

from fractions import Fraction

Vec = list[Fraction]
Mat = list[list[Fraction]]


def _to_fraction_matrix(rows) -> Mat:
    return [[Fraction(v) for v in row] for row in rows]


def simplex_max(c, A_ub, b_ub) -> tuple[str, Vec, Fraction]:
    """maximize c.x  s.t.  A_ub x <= b_ub,  x >= 0   (b_ub >= 0 required).

    Returns (status, x, value) with status in {"optimal", "unbounded"}.
    """
    A = _to_fraction_matrix(A_ub)
    b = [Fraction(v) for v in b_ub]
    c = [Fraction(v) for v in c]
    m, n = len(A), len(c)
    assert all(bi >= 0 for bi in b), "b must be nonnegative (origin feasible)"
    # tableau: rows 0..m-1 constraints with slack basis, last row objective
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    obj = [-ci for ci in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    while True:
        # Bland: entering = lowest index with negative reduced cost
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (T[i][-1] / T[i][enter], basis[i], i)
            for i in range(m)
            if T[i][enter] > 0
        ]
        if not ratios:
            return "unbounded", [], Fraction(0)
        _, _, piv = min(ratios, key=lambda t: (t[0], t[1]))
        pv = T[piv][enter]
        T[piv] = [v / pv for v in T[piv]]
        for i in range(m):
            if i != piv and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * b_ for a, b_ in zip(T[i], T[piv])]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b_ for a, b_ in zip(obj, T[piv])]
        basis[piv] = enter
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return "optimal", x, value


def maximize_free(c, A_ub, b_ub, box: Fraction) -> tuple[str, Vec, Fraction]:
    """maximize c.x  s.t.  A_ub x <= b_ub,  -box <= x_i <= box,  x free.

    Free variables are split as x = u - v with u, v >= 0.
    """
    n = len(c)
    c2 = list(c) + [-ci for ci in c]
    A2 = [list(row) + [-v for v in row] for row in A_ub]
    b2 = list(b_ub)
    for i in range(n):
        row = [Fraction(0)] * (2 * n)
        row[i], row[n + i] = Fraction(1), Fraction(-1)
        A2.append(row)
        b2.append(Fraction(box))
        A2.append([-v for v in row])
        b2.append(Fraction(box))
    status, z, value = simplex_max(c2, A2, b2)
    if status != "optimal":
        return status, [], Fraction(0)
    x = [z[i] - z[n + i] for i in range(n)]
    return status, x, value


def feasible_nonnegative(A_eq, b_eq) -> Vec | None:
    """Find x >= 0 with A_eq x = b_eq, or None (phase-1 simplex).

    Starts from the artificial basis and drives the infeasibility (sum of
    artificials) to zero; entering column by Bland's rule on the x-part.
    """
    A = _to_fraction_matrix(A_eq)
    b = [Fraction(v) for v in b_eq]
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return []
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # columns: n structural + m artificial, rhs last
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs for minimizing sum of artificials: sum of rows, x-part
    red = [sum(T[i][j] for i in range(m)) for j in range(n + m + 1)]
    while True:
        enter = next((j for j in range(n) if red[j] > 0), None)
        if enter is None:
            break
        ratios = [
            (T[i][-1] / T[i][enter], basis[i], i)
            for i in range(m)
            if T[i][enter] > 0
        ]
        if not ratios:
            break
        _, _, piv = min(ratios, key=lambda t: (t[0], t[1]))
        pv = T[piv][enter]
        T[piv] = [v / pv for v in T[piv]]
        for i in range(m):
            if i != piv and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * b_ for a, b_ in zip(T[i], T[piv])]
        if red[enter]:
            f = red[enter]
            red = [a - f * b_ for a, b_ in zip(red, T[piv])]
        basis[piv] = enter
    infeasibility = sum(T[i][-1] for i in range(m) if basis[i] >= n)
    if infeasibility != 0:
        return None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][-1]
    return x
