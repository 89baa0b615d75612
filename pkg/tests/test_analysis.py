import numpy as np
import pytest

from votewalk.analysis import (
    bound_report,
    commute_identity_check,
    cyclic_tour_check,
    edge_weights,
    effective_resistance,
    hidden_vertices,
    hitting_matrix,
    is_hidden,
    potential_phi,
    resistance_matrix,
)
from votewalk.chains import transition_matrix
from votewalk.graphs import make_topology

from conftest import random_connected_graph


def hitting_time_power_series(g, x, y, tol=1e-12, max_steps=10**6):
    """Brute-force oracle: E[T] = sum_t P(T > t) by power iteration.

    Builds its own transition matrix straight from the hop formula, so the
    whole route is independent of the library's solver.
    """
    n = g.n
    p = np.zeros((n, n))
    for i in range(n):
        d_i = len(g.adjacency[i])
        for j in g.adjacency[i]:
            p[i, j] = (1 / d_i + 1 / len(g.adjacency[j])) / n
        p[i, i] = 1 - p[i].sum()
    keep = [i for i in range(n) if i != y]
    q = p[np.ix_(keep, keep)]
    u = np.zeros(n - 1)
    u[keep.index(x)] = 1.0
    total = 0.0
    prev = 1.0
    for _ in range(max_steps):
        mass = u.sum()
        if mass < tol:
            # geometric tail: survival shrinks by at least the last ratio
            ratio = mass / prev if prev > 0 else 0.0
            if ratio < 1.0:
                total += mass * ratio / (1.0 - ratio)
            break
        total += mass
        prev = mass
        u = u @ q
    return total


class TestEdgeWeights:
    def test_star5(self):
        wv = edge_weights(make_topology("star", 5))
        assert wv.weights[0, 1] == pytest.approx(0.25, abs=1e-15)
        assert wv.self_weights[0] == pytest.approx(0.0, abs=1e-15)
        assert wv.self_weights[1] == pytest.approx(0.75, abs=1e-15)
        assert np.allclose(wv.node_totals, 1.0, atol=1e-12)
        assert wv.total == pytest.approx(5.0, abs=1e-12)

    def test_complete3(self):
        wv = edge_weights(make_topology("complete", 3))
        assert wv.weights[0, 1] == pytest.approx(1 / 3)
        assert wv.total == pytest.approx(3.0)

    def test_min_weight_above_2_over_n2(self):
        rng = np.random.default_rng(0)
        for _ in range(15):
            g = random_connected_graph(int(rng.integers(2, 30)), rng)
            wv = edge_weights(g)
            assert wv.min_edge_weight > 2.0 / g.n**2


class TestHittingMatrix:
    def test_star5_closed_forms(self):
        h = hitting_matrix(transition_matrix(make_topology("star", 5), "biased"))
        assert h[1, 0] == pytest.approx(4.0, rel=1e-10)
        assert h[0, 1] == pytest.approx(16.0, rel=1e-10)
        assert h[1, 2] == pytest.approx(20.0, rel=1e-10)
        assert np.all(np.diag(h) == 0)

    def test_k2(self):
        h = hitting_matrix(transition_matrix(make_topology("path", 2), "biased"))
        assert h[0, 1] == pytest.approx(1.0)

    def test_complete3(self):
        h = hitting_matrix(transition_matrix(make_topology("complete", 3), "biased"))
        off = h[~np.eye(3, dtype=bool)]
        assert np.allclose(off, 3.0, rtol=1e-10)

    def test_against_power_series_oracle(self):
        rng = np.random.default_rng(1)
        graphs = [
            make_topology("path", 5),
            make_topology("cycle", 6),
            make_topology("star", 7),
            random_connected_graph(6, rng),
            random_connected_graph(7, rng),
        ]
        for g in graphs:
            h = hitting_matrix(transition_matrix(g, "biased"))
            for x in range(g.n):
                for y in range(g.n):
                    if x != y:
                        oracle = hitting_time_power_series(g, x, y)
                        assert h[x, y] == pytest.approx(oracle, rel=1e-6)


class TestEffectiveResistance:
    def test_star5_leaf_to_leaf(self):
        wv = edge_weights(make_topology("star", 5))
        assert effective_resistance(wv, 1, 2) == pytest.approx(8.0, rel=1e-12)

    def test_complete3(self):
        wv = edge_weights(make_topology("complete", 3))
        assert effective_resistance(wv, 0, 1) == pytest.approx(2.0, rel=1e-12)

    def test_k2(self):
        wv = edge_weights(make_topology("path", 2))
        assert effective_resistance(wv, 0, 1) == pytest.approx(1.0, rel=1e-12)

    def test_matrix_matches_pairwise(self):
        g = random_connected_graph(9, np.random.default_rng(2))
        wv = edge_weights(g)
        r = resistance_matrix(wv)
        for x in range(g.n):
            for y in range(g.n):
                if x != y:
                    assert r[x, y] == pytest.approx(effective_resistance(wv, x, y), rel=1e-9)

    def test_same_node_rejected(self):
        wv = edge_weights(make_topology("path", 3))
        with pytest.raises(ValueError):
            effective_resistance(wv, 1, 1)


class TestCommuteIdentity:
    def test_star5_instance(self):
        g = make_topology("star", 5)
        h = hitting_matrix(transition_matrix(g, "biased"))
        # leaf-leaf commute 20 + 20 equals total weight 5 times resistance 8
        assert h[1, 2] + h[2, 1] == pytest.approx(5 * 8.0, rel=1e-10)
        assert commute_identity_check(h, edge_weights(g)) < 1e-10

    def test_complete3_instance(self):
        g = make_topology("complete", 3)
        h = hitting_matrix(transition_matrix(g, "biased"))
        assert h[0, 1] + h[1, 0] == pytest.approx(3 * 2.0, rel=1e-10)

    def test_random_graphs(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            g = random_connected_graph(int(rng.integers(2, 13)), rng)
            h = hitting_matrix(transition_matrix(g, "biased"))
            assert commute_identity_check(h, edge_weights(g)) < 1e-8


class TestCyclicTour:
    def test_star5_triple(self):
        h = hitting_matrix(transition_matrix(make_topology("star", 5), "biased"))
        # both tour orders through (leaf, hub, leaf) sum to 4 + 16 + 20
        assert h[1, 0] + h[0, 2] + h[2, 1] == pytest.approx(40.0, rel=1e-10)
        assert cyclic_tour_check(h, 1, 0, 2) < 1e-9

    def test_complete3_symmetric(self):
        h = hitting_matrix(transition_matrix(make_topology("complete", 3), "biased"))
        assert cyclic_tour_check(h, 0, 1, 2) < 1e-10

    def test_random_triples(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            n = int(rng.integers(3, 13))
            g = random_connected_graph(n, rng)
            h = hitting_matrix(transition_matrix(g, "biased"))
            for _ in range(10):
                x, y, z = rng.choice(n, size=3, replace=False)
                assert cyclic_tour_check(h, int(x), int(y), int(z)) < 1e-8

    def test_distinctness_required(self):
        h = hitting_matrix(transition_matrix(make_topology("path", 3), "biased"))
        with pytest.raises(ValueError):
            cyclic_tour_check(h, 0, 0, 1)


class TestHiddenVertices:
    def test_star5_exactly_leaves(self):
        h = hitting_matrix(transition_matrix(make_topology("star", 5), "biased"))
        assert hidden_vertices(h) == (1, 2, 3, 4)

    def test_complete3_all(self):
        h = hitting_matrix(transition_matrix(make_topology("complete", 3), "biased"))
        assert hidden_vertices(h) == (0, 1, 2)

    def test_k2_both(self):
        h = hitting_matrix(transition_matrix(make_topology("path", 2), "biased"))
        assert hidden_vertices(h) == (0, 1)

    def test_nonempty_on_random_graphs(self):
        rng = np.random.default_rng(5)
        for _ in range(15):
            g = random_connected_graph(int(rng.integers(2, 20)), rng)
            h = hitting_matrix(transition_matrix(g, "biased"))
            assert hidden_vertices(h)


class TestPotential:
    def test_star5_value(self):
        h = hitting_matrix(transition_matrix(make_topology("star", 5), "biased"))
        assert potential_phi(h, 3, 1, 2) == pytest.approx(20.0, rel=1e-10)
        assert potential_phi(h, 3, 2, 1) == pytest.approx(20.0, rel=1e-10)

    def test_self_pair_non_negative(self):
        rng = np.random.default_rng(6)
        g = random_connected_graph(8, rng)
        h = hitting_matrix(transition_matrix(g, "biased"))
        t = hidden_vertices(h)[0]
        for x in range(g.n):
            assert potential_phi(h, t, x, x) >= -1e-9

    def test_symmetry(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            g = random_connected_graph(int(rng.integers(3, 10)), rng)
            h = hitting_matrix(transition_matrix(g, "biased"))
            t = hidden_vertices(h)[0]
            for x in range(g.n):
                for y in range(g.n):
                    assert abs(potential_phi(h, t, x, y) - potential_phi(h, t, y, x)) < 1e-8

    def test_not_hidden_rejected(self):
        h = hitting_matrix(transition_matrix(make_topology("star", 5), "biased"))
        assert not is_hidden(h, 0)
        with pytest.raises(ValueError):
            potential_phi(h, 0, 1, 2)


class TestBoundReport:
    def test_star5(self):
        rep = bound_report(make_topology("star", 5))
        assert rep.max_hitting == pytest.approx(20.0, rel=1e-10)
        assert rep.n4_over_2 == 312.5
        assert rep.max_resistance == pytest.approx(8.0, rel=1e-10)
        assert rep.hidden_vertices == (1, 2, 3, 4)
        assert rep.passed

    def test_k2(self):
        rep = bound_report(make_topology("path", 2))
        assert rep.max_hitting == pytest.approx(1.0)
        assert rep.n4_over_2 == 8.0
        assert rep.passed

    def test_families_and_random(self):
        rng = np.random.default_rng(8)
        graphs = [make_topology(k, n) for k in ("star", "complete", "path") for n in (4, 9)]
        graphs += [make_topology("cycle", n) for n in (4, 9)]
        graphs += [random_connected_graph(int(rng.integers(2, 26)), rng) for _ in range(10)]
        for g in graphs:
            assert bound_report(g).passed

    def test_json_keys(self):
        import json
        rep = bound_report(make_topology("star", 5))
        d = json.loads(rep.to_json())
        assert set(d) == {
            "n", "max_hitting", "n4_over_2", "min_edge_weight", "two_over_n2",
            "max_resistance", "n3_over_2", "hidden_vertices", "pass",
        }
        assert d["pass"] is True
        assert d["hidden_vertices"] == [1, 2, 3, 4]
