import itertools
import math

import numpy as np
import pytest

from ecsbm import (
    Clustering,
    EmptyGraphError,
    UniverseMismatchError,
    build_graph,
    char_time,
    cluster_stats,
    compute_stat_report,
    distances,
    global_ccoeff,
    mixing_mus,
    outlier_degrees,
    pseudo_diameter,
)
from ecsbm.stats import StatReport
from helpers import (
    exact_diameter,
    random_clustering,
    random_connected_graph,
    random_graph,
    triangle_count_oracle,
    wedge_count_oracle,
)


def lazy_walk_lambda2_oracle(g) -> float:
    """Second-largest eigenvalue of the lazy walk via a dense eigensolver."""
    deg = g.degrees().astype(float)
    a = g.adjacency_csr().toarray()
    inv_sqrt = 1.0 / np.sqrt(deg)
    s = 0.5 * (np.eye(g.n_vertices) + inv_sqrt[:, None] * a * inv_sqrt[None, :])
    eigs = np.linalg.eigvalsh(s)
    return float(eigs[-2])


class TestPseudoDiameter:
    def test_path(self):
        assert pseudo_diameter(build_graph([(0, 1), (1, 2), (2, 3), (3, 4)])) == 4.0

    def test_clique(self):
        g = build_graph(list(itertools.combinations(range(5), 2)))
        assert pseudo_diameter(g) == 1.0

    def test_empty(self):
        with pytest.raises(EmptyGraphError):
            pseudo_diameter(build_graph([], n_vertices=0))

    def test_uses_largest_component(self):
        g = build_graph([(0, 1), (1, 2), (2, 3), (4, 5)])
        assert pseudo_diameter(g) == 3.0

    def test_exact_on_trees(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            g = random_connected_graph(rng, int(rng.integers(2, 40)), extra=0)
            assert pseudo_diameter(g) == float(exact_diameter(g))

    def test_bounds_on_random_connected(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            g = random_connected_graph(
                rng, int(rng.integers(2, 41)), extra=int(rng.integers(0, 30))
            )
            diam = exact_diameter(g)
            est = pseudo_diameter(g)
            assert est <= diam
            assert est >= math.ceil(diam / 2)


class TestCharTime:
    def test_complete_graph_k4(self):
        g = build_graph(list(itertools.combinations(range(4), 2)))
        res = char_time(g)
        assert res.converged
        assert abs(res.value - 1.5) < 1e-8

    def test_bottleneck_increases_char_time(self):
        k5 = build_graph(list(itertools.combinations(range(5), 2)))
        pairs = list(itertools.combinations(range(5), 2))
        pairs += [(u + 5, v + 5) for u, v in pairs] + [(0, 5)]
        dumbbell = build_graph(pairs)
        assert char_time(dumbbell).value > char_time(k5).value

    def test_single_edge(self):
        res = char_time(build_graph([(0, 1)]))
        assert res.converged and res.value == 1.0

    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            g = random_connected_graph(
                rng, int(rng.integers(2, 31)), extra=int(rng.integers(0, 40))
            )
            res = char_time(g)
            assert res.converged
            oracle = 1.0 / (1.0 - lazy_walk_lambda2_oracle(g))
            assert abs(res.value - oracle) <= 1e-6 * oracle


class TestGlobalCcoeff:
    def test_triangle(self):
        assert global_ccoeff(build_graph([(0, 1), (0, 2), (1, 2)])) == 1.0

    def test_star(self):
        assert global_ccoeff(build_graph([(0, 1), (0, 2), (0, 3)])) == 0.0

    def test_no_wedges(self):
        assert global_ccoeff(build_graph([(0, 1)])) == 0.0

    def test_matches_brute_force(self):
        rng = np.random.default_rng(37)
        for _ in range(50):
            n = int(rng.integers(3, 65))
            g = random_graph(rng, n, int(rng.integers(0, 3 * n)))
            wedges = wedge_count_oracle(g)
            expected = 3 * triangle_count_oracle(g) / wedges if wedges else 0.0
            assert global_ccoeff(g) == pytest.approx(expected, abs=1e-12)


class TestMixingMus:
    def test_internal_vertex(self):
        g = build_graph([(0, 1), (0, 2), (1, 2)])
        mus = mixing_mus(g, Clustering([0, 0, 0]))
        assert mus.tolist() == [0.0, 0.0, 0.0]

    def test_outliers_are_singletons(self):
        # two adjacent outliers still count as external to each other
        g = build_graph([(0, 1), (1, 2), (2, 3)])
        mus = mixing_mus(g, Clustering([0, 0, -1, -1]))
        assert mus[2] == 1.0 and mus[3] == 1.0

    def test_isolated_vertex(self):
        g = build_graph([(0, 1)], n_vertices=3)
        assert mixing_mus(g, Clustering([0, 0, -1]))[2] == 0.0

    def test_matches_edge_classification_oracle(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            g = random_graph(rng, 25, 60)
            c = random_clustering(rng, 25, 4, outlier_frac=0.3)
            mus = mixing_mus(g, c)
            for v in range(25):
                deg = g.degree(v)
                if deg == 0:
                    assert mus[v] == 0.0
                    continue
                ext = 0
                for u in g.neighbors(v).tolist():
                    if (
                        c.assignment[v] < 0
                        or c.assignment[u] < 0
                        or c.assignment[u] != c.assignment[v]
                    ):
                        ext += 1
                assert mus[v] == pytest.approx(ext / deg)

    def test_exclude_outliers_flag(self):
        g = build_graph([(0, 1), (1, 2)])
        c = Clustering([0, 0, -1])
        assert mixing_mus(g, c, include_outliers=False).shape == (2,)


class TestClusterAndOutlierStats:
    def test_clique_cluster(self):
        g = build_graph(list(itertools.combinations(range(4), 2)))
        mincuts, c_edge = cluster_stats(g, Clustering([0, 0, 0, 0]))
        assert mincuts.tolist() == [3] and c_edge.tolist() == [6]

    def test_singleton_cluster(self):
        g = build_graph([(0, 1)], n_vertices=3)
        mincuts, c_edge = cluster_stats(g, Clustering([0, 0, 1]))
        assert mincuts.tolist() == [1, 0] and c_edge.tolist() == [1, 0]

    def test_outlier_degrees(self):
        g = build_graph([(0, 1), (1, 2), (2, 3)])
        assert outlier_degrees(g, Clustering([0, 0, -1, -1])).tolist() == [2, 1]
        assert outlier_degrees(g, Clustering([0, 0, 0, 0])).shape == (0,)
        full = outlier_degrees(g, Clustering([-1, -1, -1, -1]))
        assert full.tolist() == g.degrees().tolist()


class TestDistances:
    def _report(self, **kw):
        base = dict(
            n_vertices=3,
            n_clusters=1,
            n_outliers=0,
            pseudo_diameter=2.0,
            char_time=1.5,
            global_ccoeff=0.5,
            degree=np.array([1, 2, 1]),
            mixing_mus=np.array([0.0, 0.5, 1.0]),
            mincuts=np.array([1]),
            c_edge=np.array([2]),
            o_deg=np.array([], dtype=np.int64),
        )
        base.update(kw)
        return StatReport(**base)

    def test_identical_reports_zero(self):
        r = self._report()
        d = distances(r, r)
        for name, entry in d.entries.items():
            assert entry.value == 0.0, name

    def test_rmse_hand_computed(self):
        a = self._report(degree=np.array([1, 2]), n_vertices=2)
        b = self._report(degree=np.array([1, 4]), n_vertices=2)
        assert distances(a, b).value("degree") == math.sqrt(2)

    def test_sd_sign_convention(self):
        a = self._report(pseudo_diameter=2.0)
        b = self._report(pseudo_diameter=5.0)
        # synthetic higher -> negative
        assert distances(a, b).value("pseudo_diameter") == -3.0
        assert distances(b, a).value("pseudo_diameter") == 3.0

    def test_srd(self):
        a = self._report(global_ccoeff=0.5)
        b = self._report(global_ccoeff=0.25)
        assert distances(a, b).value("global_ccoeff") == pytest.approx(0.5)

    def test_srd_undefined_on_zero_reference(self):
        a = self._report(global_ccoeff=0.0)
        b = self._report(global_ccoeff=0.25)
        entry = distances(a, b).entries["global_ccoeff"]
        assert entry.value is None and entry.metric == "SRD"

    def test_rmse_symmetry_sd_antisymmetry(self):
        rng = np.random.default_rng(3)
        a = self._report(degree=rng.integers(0, 9, 3), char_time=2.0)
        b = self._report(degree=rng.integers(0, 9, 3), char_time=7.5)
        dab, dba = distances(a, b), distances(b, a)
        assert dab.value("degree") == dba.value("degree")
        assert dab.value("char_time") == -dba.value("char_time")

    def test_universe_mismatch(self):
        a = self._report()
        b = self._report(n_vertices=4)
        with pytest.raises(UniverseMismatchError):
            distances(a, b)

    def test_matches_recomputation_oracle(self):
        rng = np.random.default_rng(53)
        for _ in range(20):
            x = rng.random(8)
            y = rng.random(8)
            a = self._report(mixing_mus=x, n_vertices=8, degree=np.zeros(8))
            b = self._report(mixing_mus=y, n_vertices=8, degree=np.zeros(8))
            expected = math.sqrt(sum((xi - yi) ** 2 for xi, yi in zip(x, y)) / 8)
            assert distances(a, b).value("mixing_mus") == pytest.approx(
                expected, rel=1e-12
            )


class TestComputeStatReport:
    def test_full_report(self):
        g = build_graph([(0, 1), (0, 2), (1, 2), (2, 3)])
        c = Clustering([0, 0, 0, -1])
        r = compute_stat_report(g, c)
        assert r.degree.tolist() == [2, 2, 3, 1]
        assert r.mincuts.tolist() == [2]
        assert r.c_edge.tolist() == [3]
        assert r.o_deg.tolist() == [1]
        assert not r.largest_component_only

    def test_subset_skips(self):
        g = build_graph([(0, 1)])
        r = compute_stat_report(g, Clustering([0, 0]), stats=("degree",))
        assert r.degree is not None and r.char_time is None and r.mincuts is None

    def test_unknown_stat(self):
        g = build_graph([(0, 1)])
        with pytest.raises(ValueError):
            compute_stat_report(g, Clustering([0, 0]), stats=("nope",))

    def test_disconnected_flag(self):
        g = build_graph([(0, 1), (2, 3)])
        r = compute_stat_report(g, Clustering([0, 0, 1, 1]), stats=("pseudo_diameter",))
        assert r.largest_component_only
