"""Four-state opinion algebra and the pairwise gossip update rules.

Opinions encode votes as integers: strong positive +2, weak positive +1,
weak negative -1, strong negative -2 (never 0).  A pairwise exchange
between the two endpoints of an activated edge follows four rules:

    1. equal opinions are unchanged;
    2. a strong opinion meeting a weaker opposite-signed one converts it
       to the strong opinion's sign and hops to the weaker node;
    3. a strong opinion meeting a weaker same-signed one swaps with it;
    4. exact opposites (strong-strong or weak-weak) swap signs, strongs
       dropping to weak.

Rules 2-4 leave the strong-positive minus strong-negative count of the
pair unchanged; that difference (the voting margin) is the conserved
quantity driving convergence to the initial strong majority.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

import numpy as np


class Opinion(IntEnum):
    STRONG_POS = 2
    WEAK_POS = 1
    WEAK_NEG = -1
    STRONG_NEG = -2

    @property
    def sign(self) -> int:
        return 1 if self.value > 0 else -1

    @property
    def is_strong(self) -> bool:
        return abs(self.value) == 2


OPINIONS = (Opinion.STRONG_POS, Opinion.WEAK_POS, Opinion.WEAK_NEG, Opinion.STRONG_NEG)


class OpinionCounts(NamedTuple):
    """Opinion census in the fixed order (|S+|, |W+|, |W-|, |S-|)."""

    s_pos: int
    w_pos: int
    w_neg: int
    s_neg: int


def apply_update(a: Opinion, b: Opinion) -> tuple[Opinion, Opinion]:
    """Apply one pairwise exchange; total on all 16 ordered opinion pairs."""
    if a == b:
        return a, b
    if a == -b:
        return Opinion(b.sign), Opinion(a.sign)
    if abs(a.value) > abs(b.value):
        if a.value * b.value < 0:
            return Opinion(-b.value), a
        return b, a
    if a.value * b.value < 0:
        return b, Opinion(-a.value)
    return b, a


@dataclass
class NetworkState:
    """Per-node opinion assignment with an incrementally maintained census.

    Single-writer: only the engine mutates a state; concurrent readers are
    safe between steps.
    """

    opinions: list[Opinion]
    counts: OpinionCounts

    @classmethod
    def from_opinions(cls, opinions) -> "NetworkState":
        ops = [Opinion(o) for o in opinions]
        if not ops:
            raise ValueError("network state requires at least one node")
        return cls(opinions=ops, counts=tally(ops))

    @property
    def n(self) -> int:
        return len(self.opinions)

    def copy(self) -> "NetworkState":
        return NetworkState(opinions=list(self.opinions), counts=self.counts)


def tally(state) -> OpinionCounts:
    """Fresh census of an opinion sequence or NetworkState."""
    opinions = state.opinions if isinstance(state, NetworkState) else state
    c = {2: 0, 1: 0, -1: 0, -2: 0}
    for o in opinions:
        c[int(o)] += 1
    return OpinionCounts(s_pos=c[2], w_pos=c[1], w_neg=c[-1], s_neg=c[-2])


def margin(state: NetworkState) -> int:
    """Voting margin |S+| - |S-|, conserved by every update."""
    return state.counts.s_pos - state.counts.s_neg


def is_converged(state: NetworkState) -> bool:
    """True iff every opinion is positive or every opinion is negative."""
    c = state.counts
    return (c.w_neg == 0 and c.s_neg == 0) or (c.w_pos == 0 and c.s_pos == 0)


def init_state(
    n: int,
    strong_pos: int,
    strong_neg: int,
    rng: np.random.Generator | None = None,
    *,
    weak_pos: int = 0,
    weak_neg: int = 0,
) -> NetworkState:
    """Build an initial voting state with the given opinion counts.

    The default call places only strong opinions (an all-strong vote);
    weak counts may be supplied for mixed starts.  Counts must be
    non-negative and sum to n.  Opinions land at uniformly random node
    positions under the given generator (fixed block layout when rng is
    None).
    """
    parts = (strong_pos, weak_pos, weak_neg, strong_neg)
    if any(k < 0 for k in parts):
        raise ValueError(f"opinion counts must be non-negative, got {parts}")
    if sum(parts) != n:
        raise ValueError(f"opinion counts {parts} do not sum to n={n}")
    opinions = (
        [Opinion.STRONG_POS] * strong_pos
        + [Opinion.WEAK_POS] * weak_pos
        + [Opinion.WEAK_NEG] * weak_neg
        + [Opinion.STRONG_NEG] * strong_neg
    )
    if rng is not None:
        order = rng.permutation(n)
        opinions = [opinions[k] for k in order]
    return NetworkState.from_opinions(opinions)
