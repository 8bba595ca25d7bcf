import math
import re

from toruspack.closed_form import optimal_centers
from toruspack.lattice import ModuliPoint, TorusPoint
from toruspack.packing import Packing, extract_graph
from toruspack.render import FigureSpec, render_moduli, render_packing

SQRT3 = math.sqrt(3.0)


def optimal_packing(n, m):
    sol = optimal_centers(n, m)
    return Packing(m=m, centers=sol.centers, radius=sol.radius)


def test_packing_svg_deterministic():
    p = optimal_packing(2, ModuliPoint(0, 1))
    g = extract_graph(p)
    a = render_packing(p, g)
    b = render_packing(p, g)
    assert a == b
    assert a.startswith("<?xml")
    assert a.count("<circle") >= 2
    assert a.count("<line") == 4
    assert "<text" in a


def test_packing_edge_lengths():
    m = ModuliPoint(0.2, 1.4)
    p = optimal_packing(3, m)
    g = extract_graph(p)
    svg = render_packing(p, g, FigureSpec(size=400))
    lines = re.findall(
        r'<line x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)"', svg
    )
    assert len(lines) == len(g.edges)
    # recover the scale from the drawn fundamental domain width
    # edges must all have the same pixel length 2r*scale
    lens = [
        math.hypot(float(x2) - float(x1), float(y2) - float(y1))
        for x1, y1, x2, y2 in lines
    ]
    assert max(lens) - min(lens) < 1e-3
    # model-space assertion via ratio to radius
    pix_per_unit = lens[0] / (2 * p.radius)
    for L in lens:
        assert abs(L / pix_per_unit - 2 * p.radius) < 1e-6


def test_selftangent_loop_rendered():
    p = Packing(m=ModuliPoint(0, 2), centers=(TorusPoint(0, 0),), radius=0.5)
    g = extract_graph(p)
    svg = render_packing(p, g)
    assert svg.count("<line") == 1


def test_empty_packing():
    p = Packing(m=ModuliPoint(0, 1), centers=(), radius=0.1)
    g = extract_graph(p)
    svg = render_packing(p, g)
    assert "<polyline" in svg and "</svg>" in svg


def test_moduli_diagrams():
    for n, regions in ((2, 2), (3, 3), (4, 4)):
        svg = render_moduli(n)
        assert svg == render_moduli(n)
        for i in range(1, regions + 1):
            assert f">R{i}_{n}</text>" in svg
        # strip bottom plus one interior curve per region boundary
        assert svg.count("<polyline") == regions
