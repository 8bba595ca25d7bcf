import numpy as np

from toruspack.census import Multigraph, enumerate_census
from toruspack.embedding import (
    canonical_embedding_form,
    dart_automorphisms,
    enumerate_toroidal,
    euler_characteristic,
    forbidden_face_filter,
    homology_labels,
    parallel_chain_filter,
    trace_faces,
)

THETA = Multigraph(2, (3,))  # two vertices, three parallel edges


class TestFaceTracing:
    def test_theta_planar(self):
        # rotation (0,2,4) at one vertex, (1,3,5) reversed at the other
        rot = [2, 5, 4, 1, 0, 3]
        faces = trace_faces(THETA, rot)
        assert len(faces) == 3
        assert euler_characteristic(THETA, faces) == 2

    def test_theta_toroidal(self):
        rot = [2, 3, 4, 5, 0, 1]
        faces = trace_faces(THETA, rot)
        assert len(faces) == 1
        assert euler_characteristic(THETA, faces) == 0

    def test_face_lengths_sum(self):
        rng = np.random.default_rng(73)
        for g in enumerate_census(3).stage3:
            for e in enumerate_toroidal(g):
                assert sum(len(f) for f in e.faces) == 2 * g.edge_count

    def test_chi_even_and_bounded(self):
        import itertools

        # all rotation systems of the theta graph
        for p0 in itertools.permutations([2, 4]):
            for p1 in itertools.permutations([3, 5]):
                cyc0 = [0, *p0]
                cyc1 = [1, *p1]
                rot = [0] * 6
                for c in (cyc0, cyc1):
                    for i, d in enumerate(c):
                        rot[d] = c[(i + 1) % len(c)]
                chi = euler_characteristic(THETA, trace_faces(THETA, rot))
                assert chi <= 2 and chi % 2 == 0


class TestEnumeration:
    def test_theta_single_toroidal_embedding(self):
        assert len(enumerate_toroidal(THETA)) == 1

    def test_counts_three_vertices(self):
        per_graph = [len(enumerate_toroidal(g)) for g in enumerate_census(3).stage3]
        assert sum(per_graph) == 6
        assert sorted(per_graph) == [1, 2, 3]

    def test_unrestricted_dedup_differs(self):
        # with bigon faces allowed the three-vertex classes grow to 36
        total = sum(
            len(enumerate_toroidal(g, include_bigons=True))
            for g in enumerate_census(3).stage3
        )
        assert total == 36

    def test_orbit_sizes_divide_group_order(self):
        for g in enumerate_census(3).stage3:
            auts = dart_automorphisms(g)
            group = 2 * len(auts)  # reflection doubles the group
            for e in enumerate_toroidal(g):
                orbit = set()
                sig = np.asarray(e.rotation)
                inv = np.empty_like(sig)
                inv[sig] = np.arange(len(sig))
                for a in auts:
                    a = np.asarray(a)
                    ainv = np.empty_like(a)
                    ainv[a] = np.arange(len(a))
                    for s in (sig, inv):
                        orbit.add(tuple(a[s[ainv]]))
                assert group % len(orbit) == 0

    def test_canonical_form_invariant_under_relabeling(self):
        g = enumerate_census(3).stage3[0]
        e = enumerate_toroidal(g)[0]
        from toruspack.embedding import relabel_embedding_data

        for perm in ((1, 2, 0), (2, 1, 0)):
            g2, rot2 = relabel_embedding_data(g, e.rotation, perm)
            assert canonical_embedding_form(g2, rot2) == e.canonical_form


class TestFilters:
    def test_forbidden_pattern_example(self):
        # corner multiset (3,3,5) at a vertex is pattern 1
        for g in enumerate_census(3).stage3:
            for e in enumerate_toroidal(g, include_bigons=True):
                from toruspack.embedding import corner_profiles

                for p in corner_profiles(e):
                    if sorted(p) == [3, 3, 5]:
                        assert not forbidden_face_filter(e).keep

    def test_filter_counts_three(self):
        kept_forbidden = 0
        kept_both = 0
        for g in enumerate_census(3).stage3:
            for e in enumerate_toroidal(g):
                if forbidden_face_filter(e).keep:
                    kept_forbidden += 1
                    if parallel_chain_filter(e).keep:
                        kept_both += 1
        assert kept_forbidden == 6
        assert kept_both == 6

    def test_filter_order_independent(self):
        for g in enumerate_census(3).stage3 + enumerate_census(4).stage3[:4]:
            for e in enumerate_toroidal(g):
                a = forbidden_face_filter(e).keep and parallel_chain_filter(e).keep
                b = parallel_chain_filter(e).keep and forbidden_face_filter(e).keep
                assert a == b


class TestHomology:
    def test_labels_close_faces(self):
        for g in enumerate_census(3).stage3:
            for e in enumerate_toroidal(g):
                labels = homology_labels(e)
                for f in e.faces:
                    sa = sb = 0
                    for d in f:
                        a, b = labels[d // 2]
                        s = 1 if d % 2 == 0 else -1
                        sa += s * a
                        sb += s * b
                    assert (sa, sb) == (0, 0)

    def test_labels_span_homology(self):
        # the label matrix of the cycle space must have full rank 2
        for g in enumerate_census(3).stage3:
            for e in enumerate_toroidal(g):
                labels = np.array(homology_labels(e))
                assert np.linalg.matrix_rank(labels) == 2


def test_unrestricted_dedup_one_four_vertex_graph():
    # spot check of the include_bigons path on a 7-edge graph
    g = Multigraph(4, (0, 1, 2, 1, 2, 1))
    assert len(enumerate_toroidal(g, include_bigons=True)) == 9
    assert len(enumerate_toroidal(g)) == 4
