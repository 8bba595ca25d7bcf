"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line; the density-ceiling criterion checks
every packing registered by the other criteria and therefore runs last.
"""
import math

import numpy as np

from toruspack.census import enumerate_census
from toruspack.closed_form import optimal_centers, optimal_radius, radius_branch
from toruspack.lattice import ModuliPoint, TorusPoint
from toruspack.oracle import maximize_min_distance, realize_embedding
from toruspack.packing import (
    Packing,
    TRIANGULAR_DENSITY,
    density,
    extract_graph,
)
from toruspack.regions import (
    boundary_curve,
    classify,
    in_free_region,
    region_count,
    sample_interior,
)
from toruspack.rigidity import build_framework, classify_packing, find_nontrivial_flex

SQRT3 = math.sqrt(3.0)

_PACKINGS: list[Packing] = []


def note(p: Packing) -> Packing:
    _PACKINGS.append(p)
    return p


def optimal_packing(n, m):
    sol = optimal_centers(n, m)
    return note(Packing(m=m, centers=sol.centers, radius=sol.radius))


def report(criterion: str, ok: bool, detail: str = ""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] {criterion}" + (f" -- {detail}" if detail else ""))
    assert ok, f"{criterion}: {detail}"


def test_criterion_01_census_counts():
    c3 = enumerate_census(3).counts
    c4 = enumerate_census(4).counts
    total = len(enumerate_census(3).stage3) + len(enumerate_census(4).stage3)
    ok = c3 == (37, 10, 3) and c4 == (825, 102, 20) and total == 23
    report(
        "criterion 1: census counts (37,10,3)/(825,102,20), 23 stage-3 graphs",
        ok,
        f"n=3 {c3}, n=4 {c4}, total {total}",
    )


def test_criterion_02_embedding_counts(catalog3, catalog4):
    results = {}
    for cat in (catalog3, catalog4):
        total = len(cat.entries)
        forb = sum(1 for e in cat.entries if e.forbidden_reason is None)
        both = len(cat.survivors())
        results[cat.n] = (total, forb, both)
    ok = results[3] == (6, 6, 6) and results[4] == (97, 31, 21)
    report(
        "criterion 2: embeddings 6/97, filters 6/31, survivors 6/21",
        ok,
        f"n=3 {results[3]}, n=4 {results[4]}",
    )


def test_criterion_03_formula_oracle_agreement():
    rng = np.random.default_rng(20260810)
    worst = 0.0
    over = False
    for n in (2, 3, 4):
        for idx in range(1, region_count(n) + 1):
            for _ in range(20):
                m = sample_interior(n, idx, rng)
                res = maximize_min_distance(n, m, restarts=200, seed=101)
                r_formula = optimal_radius(n, m)
                note(Packing(m=m, centers=res.best_centers, radius=res.best_radius))
                worst = max(worst, abs(res.best_radius - r_formula))
                over = over or res.best_radius > r_formula + 1e-6
    ok = worst <= 1e-3 and not over
    report(
        "criterion 3: oracle agrees with formulas (20 pts/region, 200 restarts)",
        ok,
        f"worst gap {worst:.3e}, bound exceeded: {over}",
    )


def test_criterion_04_boundary_constants():
    rng = np.random.default_rng(404)
    worst = 0.0
    for n, idx in ((3, 1), (4, 2)):
        for _ in range(100):
            x = float(rng.uniform(0, 0.5))
            y = boundary_curve(n, idx, x)
            r = optimal_radius(n, ModuliPoint(x, y))
            worst = max(worst, abs(r - 1 / math.sqrt(12)))
    ok = worst <= 1e-12
    report(
        "criterion 4: R1_3/R2_3 and R2_4/R3_4 boundaries at 1/sqrt(12)",
        ok,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_05_continuity():
    rng = np.random.default_rng(505)
    worst = 0.0
    for n in (2, 3, 4):
        for idx in range(1, region_count(n)):
            hits = 0
            while hits < 100:
                x = float(rng.uniform(0, 0.5))
                y = boundary_curve(n, idx, x)
                lo = radius_branch(n, idx, x, y)
                hi = radius_branch(n, idx + 1, x, y)
                if math.isnan(lo) or math.isnan(hi):
                    continue  # pinched closure corner: formula undefined
                worst = max(worst, abs(lo - hi))
                hits += 1
    ok = worst <= 1e-9
    report(
        "criterion 5: adjacent branches agree across every region boundary",
        ok,
        f"worst disagreement {worst:.3e}",
    )


def test_criterion_06_tangency_censuses():
    rng = np.random.default_rng(606)
    cases = [
        ("interior R1_4", 4, sample_interior(4, 1, rng), 9),
        ("interior R2_3", 3, sample_interior(3, 2, rng), 5),
        ("interior R1_3", 3, sample_interior(3, 1, rng), 5),
        ("interior R2_4", 4, sample_interior(4, 2, rng), 8),
        ("interior R3_4", 4, sample_interior(4, 3, rng), 7),
        ("left edge R1_2", 2, ModuliPoint(0.0, float(rng.uniform(1.05, 1.7))), 4),
    ]
    results = []
    ok = True
    for label, n, m, want in cases:
        p = optimal_packing(n, m)
        got = len(extract_graph(p, tol=1e-9).edges)
        results.append(f"{label}={got}")
        ok = ok and got == want
    report("criterion 6: tangency counts per region", ok, ", ".join(results))


def test_criterion_07_rigidity_suite(catalog3):
    rng = np.random.default_rng(707)
    ok = True
    details = []
    for n in (2, 3, 4):
        for idx in range(1, region_count(n)):  # radius < 1/2 regions
            for _ in range(20):
                m = sample_interior(n, idx, rng)
                verdict = classify_packing(optimal_packing(n, m))
                if verdict != "rigid-LMD":
                    ok = False
                    details.append(f"R{idx}_{n} at ({m.x:.4f},{m.y:.4f}): {verdict}")
    # the published flexible family: a realization of ECG2-2
    entry = catalog3.by_name("ECG2-2")
    samples = realize_embedding(entry.embedding, attempts=250, seed=77, max_samples=3)
    if not samples:
        ok = False
        details.append("ECG2-2 did not realize")
    else:
        for s in samples:
            p = note(Packing(m=s.m, centers=s.centers, radius=s.edge_length / 2))
            verdict = classify_packing(p, tol=1e-7)
            if verdict != "flexible":
                ok = False
                details.append(f"ECG2-2 sample classified {verdict}")
    # two-circle horizontal pair flexes vertically
    pair = Packing(
        m=ModuliPoint(0, 1),
        centers=(TorusPoint(0, 0), TorusPoint(0.5, 0)),
        radius=0.25,
    )
    flex = find_nontrivial_flex(build_framework(pair, extract_graph(pair)))
    if flex is None:
        ok = False
        details.append("horizontal pair produced no flex witness")
    report(
        "criterion 7: rigid-LMD interiors, flexible ECG2-2, pair flex witness",
        ok,
        "; ".join(details) or "all verdicts as published",
    )


def test_criterion_08_realization_evidence(catalog3, catalog4):
    details = []
    ok = True
    entry = catalog4.by_name("ECG10-1")
    ghosts = realize_embedding(entry.embedding, attempts=1000, seed=8101, max_samples=1)
    if ghosts:
        ok = False
        details.append("ECG10-1 unexpectedly realized")
    else:
        details.append("ECG10-1: none in 1000 attempts")
    targets = {"ECG1-1": catalog3, "ECG9-1": catalog4, "ECG4-2": catalog4,
               "ECG7-1": catalog4, "ECG18-1": catalog4}
    for name, cat in targets.items():
        e = cat.by_name(name)
        samples = realize_embedding(e.embedding, attempts=400, seed=8102, max_samples=2)
        if not samples or any(s.residual >= 1e-10 for s in samples):
            ok = False
            details.append(f"{name}: no residual<1e-10 sample")
        else:
            for s in samples:
                note(Packing(m=s.m, centers=s.centers, radius=s.edge_length / 2))
            details.append(f"{name}: residual {max(s.residual for s in samples):.1e}")
    report("criterion 8: realization evidence", ok, "; ".join(details))


def test_criterion_10_self_tangent_region():
    rng = np.random.default_rng(1010)
    ok = True
    details = []
    for n in (2, 3, 4):
        for _ in range(10):
            x = float(rng.uniform(0, 0.5))
            from toruspack.regions import free_boundary_value

            y = free_boundary_value(n, x) + float(rng.uniform(0.05, 1.5))
            m = ModuliPoint(x, y)
            assert in_free_region(n, m)
            res = maximize_min_distance(n, m, restarts=120, seed=110)
            p = note(Packing(m=m, centers=res.best_centers, radius=res.best_radius))
            if abs(res.best_radius - 0.5) > 1e-6:
                ok = False
                details.append(f"n={n} ({x:.3f},{y:.3f}): r={res.best_radius:.8f}")
                continue
            g = extract_graph(p, tol=1e-5)
            if g.loop_count() == 0:
                ok = False
                details.append(f"n={n} ({x:.3f},{y:.3f}): no loop")
    report(
        "criterion 10: free region reaches radius 1/2 with self-tangencies",
        ok,
        "; ".join(details) or "all 30 sampled tori as expected",
    )


def test_criterion_09_density_ceiling():
    worst = 0.0
    for p in _PACKINGS:
        worst = max(worst, density(p) - TRIANGULAR_DENSITY)
    ok = worst <= 1e-12 and len(_PACKINGS) > 300
    report(
        "criterion 9: density of every produced packing below pi/sqrt(12)",
        ok,
        f"{len(_PACKINGS)} packings, worst excess {worst:.3e}",
    )
