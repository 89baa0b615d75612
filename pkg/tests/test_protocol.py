import numpy as np
import pytest

from votewalk.protocol import (
    NetworkState,
    Opinion,
    OpinionCounts,
    apply_update,
    init_state,
    is_converged,
    margin,
    tally,
)

S, W, w, s = Opinion.STRONG_POS, Opinion.WEAK_POS, Opinion.WEAK_NEG, Opinion.STRONG_NEG

# Ground truth derived by hand from the four pairwise rules, one row per
# ordered input pair (encodings +2/+1/-1/-2).
HAND_TABLE = {
    (2, 2): (2, 2),
    (2, 1): (1, 2),
    (2, -1): (1, 2),
    (2, -2): (-1, 1),
    (1, 2): (2, 1),
    (1, 1): (1, 1),
    (1, -1): (-1, 1),
    (1, -2): (-2, -1),
    (-1, 2): (2, 1),
    (-1, 1): (1, -1),
    (-1, -1): (-1, -1),
    (-1, -2): (-2, -1),
    (-2, 2): (1, -1),
    (-2, 1): (-1, -2),
    (-2, -1): (-1, -2),
    (-2, -2): (-2, -2),
}


def strong_diff(pair):
    return sum(1 for v in pair if v == 2) - sum(1 for v in pair if v == -2)


def strong_mass(pair):
    return sum(1 for v in pair if abs(int(v)) == 2)


class TestUpdateRules:
    def test_full_16_pair_table(self):
        for (a, b), expected in HAND_TABLE.items():
            got = apply_update(Opinion(a), Opinion(b))
            assert (int(got[0]), int(got[1])) == expected, f"pair ({a}, {b})"

    def test_signature_exchanges(self):
        assert apply_update(S, s) == (w, W)     # opposite strongs annihilate
        assert apply_update(S, w) == (W, S)     # strong converts opposite weak, hops
        assert apply_update(S, W) == (W, S)     # same-sign swap
        assert apply_update(W, w) == (w, W)     # weak opposites swap
        assert apply_update(w, w) == (w, w)     # identical unchanged

    def test_margin_conserved_on_all_pairs(self):
        for a in Opinion:
            for b in Opinion:
                out = apply_update(a, b)
                assert strong_diff(out) == strong_diff((a, b))

    def test_strong_mass_monotone(self):
        for a in Opinion:
            for b in Opinion:
                out = apply_update(a, b)
                before, after = strong_mass((a, b)), strong_mass(out)
                assert after <= before
                if after < before:
                    assert before - after == 2
                    assert {a, b} == {S, s}

    def test_swap_symmetry(self):
        for a in Opinion:
            for b in Opinion:
                x, y = apply_update(a, b)
                assert apply_update(b, a) == (y, x)


class TestState:
    def test_init_counts(self):
        st = init_state(5, 3, 2, np.random.default_rng(1))
        assert st.counts == OpinionCounts(3, 0, 0, 2)
        assert margin(st) == 1
        assert tally(st) == st.counts

    def test_init_single_node(self):
        st = init_state(1, 1, 0)
        assert st.opinions == [S]

    def test_init_counts_exceed_n(self):
        with pytest.raises(ValueError):
            init_state(4, 3, 2)

    def test_init_negative(self):
        with pytest.raises(ValueError):
            init_state(2, 3, -1)

    def test_init_with_weak(self):
        st = init_state(6, 2, 1, np.random.default_rng(0), weak_pos=2, weak_neg=1)
        assert st.counts == OpinionCounts(2, 2, 1, 1)

    def test_placement_reproducible(self):
        a = init_state(9, 5, 4, np.random.default_rng(3))
        b = init_state(9, 5, 4, np.random.default_rng(3))
        assert a.opinions == b.opinions

    def test_placement_shuffles(self):
        st = init_state(101, 51, 50, np.random.default_rng(4))
        block = [Opinion.STRONG_POS] * 51 + [Opinion.STRONG_NEG] * 50
        assert st.opinions != block

    def test_counts_sum_to_n(self):
        st = init_state(7, 4, 3, np.random.default_rng(2))
        assert sum(st.counts) == 7

    def test_tally_direct(self):
        assert tally([S, s, W]) == OpinionCounts(1, 1, 0, 1)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            NetworkState.from_opinions([])


class TestConvergence:
    def test_all_weak_pos(self):
        assert is_converged(NetworkState.from_opinions([W, W, W]))

    def test_mixed(self):
        assert not is_converged(NetworkState.from_opinions([S, w]))

    def test_all_positive_mixed_strength(self):
        assert is_converged(NetworkState.from_opinions([S, W, W]))

    def test_all_negative(self):
        assert is_converged(NetworkState.from_opinions([s, w, w]))
