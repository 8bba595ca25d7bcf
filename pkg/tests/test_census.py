import pytest

from toruspack.census import Multigraph, canonicalize, enumerate_census
from toruspack.errors import UnsupportedN


def test_table_counts():
    assert enumerate_census(3).counts == (37, 10, 3)
    assert enumerate_census(4).counts == (825, 102, 20)


def test_total_stage3_graphs():
    assert len(enumerate_census(3).stage3) + len(enumerate_census(4).stage3) == 23


def test_unsupported_n():
    with pytest.raises(UnsupportedN):
        enumerate_census(5)


def test_canonical_relabeling_invariance():
    # paths 1-2-3 and 2-3-1 are the same graph
    a = Multigraph(3, (1, 0, 1))   # edges {0,1}, {1,2}
    b = Multigraph(3, (0, 1, 1))   # edges {0,2}, {1,2}
    assert canonicalize(a) == canonicalize(b)


def test_multiplicity_distinguishes():
    single = Multigraph(2, (1,))
    double = Multigraph(2, (2,))
    assert canonicalize(single) != canonicalize(double)


def test_triple_triangle_fixed_by_all_permutations():
    g = Multigraph(3, (3, 3, 3))
    assert canonicalize(g) == bytes([3]) + bytes((3, 3, 3))


def test_stage3_multiplicity_bounds():
    for g in enumerate_census(4).stage3:
        assert max(g.multiplicities) <= 2
    triple = [g for g in enumerate_census(3).stage3 if max(g.multiplicities) == 3]
    assert len(triple) == 1
    assert all(d == 6 for d in triple[0].degrees())


def test_degree_sum():
    for n in (3, 4):
        for g in enumerate_census(n).stage1:
            assert sum(g.degrees()) == 2 * g.edge_count


def test_stage3_edge_distribution():
    from collections import Counter

    counts = Counter(g.edge_count for g in enumerate_census(4).stage3)
    assert dict(counts) == {7: 4, 8: 6, 9: 5, 10: 3, 11: 1, 12: 1}


def test_census_file(tmp_path):
    from toruspack.census import write_census_file

    path = tmp_path / "census.txt"
    write_census_file(str(path), [enumerate_census(3)])
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    assert len(lines) == 37
    assert sum(1 for l in lines if "stage=3" in l) == 3
