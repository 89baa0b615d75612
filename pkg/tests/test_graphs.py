import numpy as np
import pytest

from votewalk.graphs import (
    Graph,
    erdos_renyi_connected,
    erdos_renyi_with_attempts,
    from_edge_list,
    is_connected,
    make_topology,
    to_edge_list,
)

from conftest import random_connected_graph


def check_invariants(g: Graph):
    assert len(g.adjacency) == g.n
    for i, nbrs in enumerate(g.adjacency):
        assert list(nbrs) == sorted(set(nbrs)), "neighbors sorted and unique"
        assert i not in nbrs, "no self-loop"
        for j in nbrs:
            assert 0 <= j < g.n
            assert i in g.adjacency[j], "symmetric"
    assert sum(len(a) for a in g.adjacency) == 2 * g.m


class TestMakeTopology:
    def test_star5(self):
        g = make_topology("star", 5)
        assert g.adjacency[0] == (1, 2, 3, 4)
        assert g.m == 4
        assert g.degree(0) == 4
        assert all(g.degree(k) == 1 for k in range(1, 5))
        check_invariants(g)

    def test_complete3_is_triangle(self):
        g = make_topology("complete", 3)
        assert g.m == 3
        assert g.adjacency == ((1, 2), (0, 2), (0, 1))

    def test_path2_single_edge(self):
        g = make_topology("path", 2)
        assert g.m == 1
        assert g.adjacency == ((1,), (0,))

    def test_cycle(self):
        g = make_topology("cycle", 5)
        assert g.m == 5
        assert all(g.degree(i) == 2 for i in range(5))
        check_invariants(g)

    def test_deterministic(self):
        assert make_topology("star", 9) == make_topology("star", 9)

    @pytest.mark.parametrize("kind,n", [("star", 1), ("path", 1), ("complete", 1), ("cycle", 2)])
    def test_below_minimum(self, kind, n):
        with pytest.raises(ValueError):
            make_topology(kind, n)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            make_topology("torus", 5)


class TestErdosRenyi:
    def test_connected_and_reproducible(self):
        p = 5 * np.log(21) / 21
        g1 = erdos_renyi_connected(21, p, np.random.default_rng(11))
        g2 = erdos_renyi_connected(21, p, np.random.default_rng(11))
        assert g1 == g2
        assert is_connected(g1)
        check_invariants(g1)
        # expected edges 0.5*21*20*p ~ 152; generous window
        assert 100 < g1.m < 200

    def test_p_one_gives_complete_first_try(self):
        g, attempts = erdos_renyi_with_attempts(5, 1.0, np.random.default_rng(0))
        assert attempts == 1
        assert g.m == 10

    def test_exhausts_attempts(self):
        with pytest.raises(RuntimeError):
            erdos_renyi_connected(20, 1e-6, np.random.default_rng(0), max_attempts=3)

    def test_bad_p(self):
        with pytest.raises(ValueError):
            erdos_renyi_connected(5, 0.0, np.random.default_rng(0))
        with pytest.raises(ValueError):
            erdos_renyi_connected(5, 1.5, np.random.default_rng(0))

    def test_first_draw_connectivity_rate_above_threshold(self):
        # at p = 5 ln(n)/n the graph is essentially always connected
        n = 31
        p = 5 * np.log(n) / n
        ok = 0
        for seed in range(1000):
            try:
                erdos_renyi_with_attempts(n, p, np.random.default_rng(seed), max_attempts=1)
                ok += 1
            except RuntimeError:
                pass
        assert ok / 1000 > 0.99

    def test_generated_invariants(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            g = random_connected_graph(int(rng.integers(2, 30)), rng)
            check_invariants(g)


class TestEdgeList:
    def test_parse_path(self):
        g = from_edge_list("3 2\n0 1\n1 2")
        assert g.adjacency == ((1,), (0, 2), (1,))

    def test_parse_triangle_with_comments(self):
        g = from_edge_list("# triangle\n3 3\n0 1\n\n1 2\n# done\n0 2\n")
        assert g.m == 3

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            from_edge_list("2 1\n0 0")

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            from_edge_list("3 2\n0 1\n1 0")

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            from_edge_list("2 1\n0 5")

    def test_malformed_line(self):
        with pytest.raises(ValueError, match="malformed"):
            from_edge_list("2 1\n0 1 2")
        with pytest.raises(ValueError, match="malformed"):
            from_edge_list("2 1\nzero one")

    def test_edge_count_mismatch(self):
        with pytest.raises(ValueError, match="edges"):
            from_edge_list("3 2\n0 1")

    def test_round_trip(self):
        rng = np.random.default_rng(9)
        g = random_connected_graph(12, rng)
        assert from_edge_list(to_edge_list(g)) == g

    def test_serialization_order(self):
        g = make_topology("star", 4)
        assert to_edge_list(g) == "4 3\n0 1\n0 2\n0 3\n"


class TestConnectivity:
    def test_star_connected(self):
        assert is_connected(make_topology("star", 5))

    def test_two_disjoint_edges(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert not is_connected(g)

    def test_single_node(self):
        assert is_connected(Graph.from_edges(1, []))
