"""Asynchronous gossip engine: tick loop, convergence detection, tracing.

Time is measured in global clock ticks: one tick activates one edge and
applies one pairwise update.  The activation draw is one uniform choice
of initiator node followed by one uniform choice among its neighbors
(not uniform over edges), which is what induces the biased single-opinion
walk analyzed in :mod:`votewalk.chains`.  Exponential inter-arrival times
are never sampled; convergence comparisons depend only on the activation
sequence.  Reported absolute time, where needed, is ticks / n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .protocol import (
    NetworkState,
    Opinion,
    OpinionCounts,
    apply_update,
)

DEFAULT_MAX_TICKS = 10_000_000

# Count-vector slot per opinion encoding, order (s_pos, w_pos, w_neg, s_neg).
_SLOT = {2: 0, 1: 1, -1: 2, -2: 3}

# The full 16-pair exchange table, materialized once from the rule logic.
_UPDATE = {
    (a, b): apply_update(a, b) for a in Opinion for b in Opinion
}


@dataclass(frozen=True)
class RunResult:
    """Outcome of one simulation run.

    final_sign is +1 or -1 when converged, None when the tick cap was
    reached first (cap exhaustion is an outcome, not an error).
    """

    converged: bool
    ticks: int
    final_sign: int | None
    seed: int | None
    n: int
    margin: int


@dataclass(frozen=True)
class TraceRow:
    tick: int
    counts: OpinionCounts


def step(state: NetworkState, g: Graph, rng: np.random.Generator) -> tuple[int, int]:
    """Consume one global tick: activate one edge and update in place.

    Returns the activated edge (initiator, chosen neighbor).
    """
    i = int(rng.integers(g.n))
    nbrs = g.adjacency[i]
    j = nbrs[int(rng.integers(len(nbrs)))]
    a, b = state.opinions[i], state.opinions[j]
    if a != b:
        a2, b2 = _UPDATE[a, b]
        state.opinions[i] = a2
        state.opinions[j] = b2
        c = list(state.counts)
        c[_SLOT[a]] -= 1
        c[_SLOT[b]] -= 1
        c[_SLOT[a2]] += 1
        c[_SLOT[b2]] += 1
        state.counts = OpinionCounts(*c)
    return i, j


def run(
    g: Graph,
    s0: NetworkState,
    rng: np.random.Generator,
    max_ticks: int = DEFAULT_MAX_TICKS,
    seed: int | None = None,
) -> RunResult:
    """Repeat :func:`step` until convergence or the tick cap.

    The input state is not mutated.  The activation stream is identical
    to calling step() in a loop with the same generator, so results are
    fully determined by (graph, initial state, generator state, cap).
    """
    result, _ = _run_loop(g, s0, rng, max_ticks, seed, sample_every=None)
    return result


def run_traced(
    g: Graph,
    s0: NetworkState,
    rng: np.random.Generator,
    max_ticks: int = DEFAULT_MAX_TICKS,
    sample_every: int = 1,
    seed: int | None = None,
) -> tuple[RunResult, list[TraceRow]]:
    """Like :func:`run`, also recording the opinion census.

    Rows are recorded at tick 0, every sample_every ticks, and at the
    final tick.
    """
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    return _run_loop(g, s0, rng, max_ticks, seed, sample_every=sample_every)


def _run_loop(g, s0, rng, max_ticks, seed, sample_every):
    if max_ticks < 1:
        raise ValueError("max_ticks must be >= 1")
    if s0.n != g.n:
        raise ValueError(f"state has {s0.n} opinions but graph has {g.n} nodes")
    state = s0.copy()
    start_margin = state.counts.s_pos - state.counts.s_neg

    trace: list[TraceRow] | None = None if sample_every is None else []
    ops = state.opinions
    c = list(state.counts)
    adj = g.adjacency
    n = g.n
    integers = rng.integers
    table = _UPDATE
    slot = _SLOT

    def record(tick):
        if trace is not None:
            trace.append(TraceRow(tick=tick, counts=OpinionCounts(*c)))

    def converged_now():
        return (c[2] == 0 and c[3] == 0) or (c[0] == 0 and c[1] == 0)

    record(0)
    tick = 0
    converged = converged_now()
    while not converged and tick < max_ticks:
        i = int(integers(n))
        nbrs = adj[i]
        j = nbrs[int(integers(len(nbrs)))]
        tick += 1
        a = ops[i]
        b = ops[j]
        if a != b:
            a2, b2 = table[a, b]
            ops[i] = a2
            ops[j] = b2
            c[slot[a]] -= 1
            c[slot[b]] -= 1
            c[slot[a2]] += 1
            c[slot[b2]] += 1
            converged = converged_now()
        if trace is not None and not converged and tick % sample_every == 0:
            record(tick)

    state.counts = OpinionCounts(*c)
    if trace is not None and (not trace or trace[-1].tick != tick):
        record(tick)

    final_sign: int | None = None
    if converged:
        final_sign = 1 if c[0] + c[1] == n else -1
    result = RunResult(
        converged=converged,
        ticks=tick,
        final_sign=final_sign,
        seed=seed,
        n=n,
        margin=start_margin,
    )
    if trace is None:
        return result, []
    return result, trace


def write_trace_csv(rows: list[TraceRow]) -> str:
    """Render trace rows as CSV with header tick,s_pos,w_pos,w_neg,s_neg."""
    out = ["tick,s_pos,w_pos,w_neg,s_neg"]
    for row in rows:
        k = row.counts
        out.append(f"{row.tick},{k.s_pos},{k.w_pos},{k.w_neg},{k.s_neg}")
    return "\n".join(out) + "\n"
