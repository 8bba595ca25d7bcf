import math

import numpy as np
import pytest

from toruspack.errors import AlphaOutOfRange, OutOfModuliStrip
from toruspack.lattice import ModuliPoint
from toruspack.regions import (
    boundary_curve,
    classify,
    free_boundary_value,
    in_free_region,
    region_count,
    sample_interior,
    self_tangent_boundary,
)

SQRT3 = math.sqrt(3.0)


class TestClassify:
    def test_examples(self):
        assert classify(2, ModuliPoint(0.2, 1.1)).name == "R1_2"
        assert classify(3, ModuliPoint(0, 2)).name == "R2_3"
        assert classify(2, ModuliPoint(0.5, 2)).name == "R2_2"

    def test_triangular_corner_four_circles(self):
        region = classify(4, ModuliPoint(0.5, SQRT3 / 2))
        assert region.name == "R1_4"
        assert "lower" in region.boundary_flags

    def test_out_of_strip(self):
        with pytest.raises(OutOfModuliStrip):
            classify(3, ModuliPoint(0.3, 0.4))
        with pytest.raises(OutOfModuliStrip):
            classify(3, ModuliPoint(0.7, 2.0))

    def test_partition(self):
        rng = np.random.default_rng(23)
        for n in (2, 3, 4):
            for _ in range(10_000 // 3):
                x = rng.uniform(0, 0.5)
                y = rng.uniform(math.sqrt(1 - x * x) + 1e-9, 4.5)
                hits = 0
                m = ModuliPoint(x, y)
                region = classify(n, m)
                for idx in range(1, region_count(n) + 1):
                    lo = boundary_curve(n, idx - 1, x) if idx > 1 else math.sqrt(max(1 - x * x, 0))
                    hi = boundary_curve(n, idx, x) if idx < region_count(n) else math.inf
                    if lo <= y < hi:
                        hits += 1
                        assert region.index == idx
                assert hits == 1

    def test_boundary_coherence(self):
        # points exactly on each curve carry the lower flag of the upper region
        rng = np.random.default_rng(29)
        for n in (2, 3, 4):
            for idx in range(1, region_count(n)):
                for _ in range(50):
                    x = float(rng.uniform(0, 0.5))
                    y = boundary_curve(n, idx, x)
                    region = classify(n, ModuliPoint(x, y))
                    assert region.index == idx + 1
                    assert "lower" in region.boundary_flags


class TestSelfTangentBoundary:
    def test_paper_values(self):
        m = self_tangent_boundary(3, math.pi / 2)
        assert (m.x, m.y) == pytest.approx((0.0, SQRT3 + 1), abs=1e-12)
        m = self_tangent_boundary(4, math.pi / 3)
        assert (m.x, m.y) == pytest.approx((0.0, 2 * SQRT3), abs=1e-12)
        m = self_tangent_boundary(2, math.pi / 2)
        assert (m.x, m.y) == pytest.approx((0.5, SQRT3 / 2 + 1), abs=1e-12)

    def test_alpha_range(self):
        with pytest.raises(AlphaOutOfRange):
            self_tangent_boundary(3, 0.5)

    def test_traces_top_region_lower_curve(self):
        # the parametric boundary equals the closed-form curve pointwise
        for n in (2, 3, 4):
            top = region_count(n)
            for alpha in np.linspace(math.pi / 3, math.pi / 2, 100):
                m = self_tangent_boundary(n, float(alpha))
                assert m.y == pytest.approx(boundary_curve(n, top - 1, m.x), abs=1e-12)
                assert m.y == pytest.approx(free_boundary_value(n, m.x), abs=1e-12)


class TestFreeRegion:
    def test_examples(self):
        assert in_free_region(3, ModuliPoint(0, 3)) is True
        assert in_free_region(3, ModuliPoint(0, SQRT3 + 1)) is False
        assert in_free_region(4, ModuliPoint(0.25, 1.2)) is False

    def test_matches_top_region(self):
        rng = np.random.default_rng(31)
        for n in (2, 3, 4):
            for _ in range(300):
                x = rng.uniform(0, 0.5)
                y = rng.uniform(1.0, 4.6)
                try:
                    m = ModuliPoint(x, y).validate()
                except OutOfModuliStrip:
                    continue
                top = region_count(n)
                expected = classify(n, m).index == top and "lower" not in classify(n, m).boundary_flags
                assert in_free_region(n, m) == expected


def test_sample_interior_lands_inside():
    rng = np.random.default_rng(37)
    for n in (2, 3, 4):
        for idx in range(1, region_count(n) + 1):
            for _ in range(20):
                m = sample_interior(n, idx, rng)
                region = classify(n, m)
                assert region.index == idx
                assert not region.boundary_flags & {"lower", "upper"}
