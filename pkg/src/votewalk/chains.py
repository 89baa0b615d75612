"""Single-opinion walks and two-token joint chains on a gossip network.

Three single-walker transition matrices are exposed:

    simple   P_ii = 0,           P_ij = 1/d_i            (classic walk)
    natural  P_ii = 1 - 1/n,     P_ij = 1/(n d_i)        (lazy initiator-only walk)
    biased   P_ii = remainder,   P_ij = (1/n)(1/d_i + 1/d_j)

The biased walk is the law of a single marked opinion under the engine's
activation model: an opinion hops across an edge whenever either endpoint
initiates the activation, giving the two-sided hop probability above.  It
is doubly stochastic (uniform stationary distribution, symmetric matrix).

Two joint chains track a pair of marked tokens until they meet:

    variant "x"       the physical pair process: tokens meet only by
                      simultaneously crossing their shared edge;
    variant "xprime"  a coupled variant in which adjacent tokens meet
                      with (up to) twice the crossing probability, by
                      also converting both-stay mass into meetings.

Meeting means occupying the same node after a tick or crossing the same
edge within a tick.  For "xprime" the doubled meeting mass is clamped to
the available stay mass whenever the pair's combined move probability
exceeds 1 (both tokens of a 2-node graph, a hub-leaf pair of a star);
``validate_joint_distribution`` flags such pairs as clamped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph

VARIANTS = ("x", "xprime")

MEETING_TICK_CAP = 100_000_000

_STOCHASTIC_TOL = 1e-12


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic n x n matrix tagged with its walk kind."""

    kind: str
    probs: np.ndarray

    @property
    def n(self) -> int:
        return self.probs.shape[0]


def transition_matrix(g: Graph, kind: str) -> TransitionMatrix:
    """Build the transition matrix of the named walk on a connected graph."""
    if kind not in ("simple", "natural", "biased"):
        raise ValueError(f"unknown walk kind {kind!r}")
    n = g.n
    if n < 2:
        raise ValueError("walks require at least 2 nodes")
    deg = g.degrees().astype(np.float64)
    adj = np.zeros((n, n))
    for i, nbrs in enumerate(g.adjacency):
        adj[i, list(nbrs)] = 1.0

    if kind == "simple":
        probs = adj / deg[:, None]
    elif kind == "natural":
        probs = adj / (n * deg[:, None])
        np.fill_diagonal(probs, 1.0 - 1.0 / n)
    else:
        inv_deg = 1.0 / deg
        probs = adj * (inv_deg[:, None] + inv_deg[None, :]) / n
        resid = 1.0 - probs.sum(axis=1)
        if resid.min() < -_STOCHASTIC_TOL:
            raise RuntimeError(f"negative biased diagonal {resid.min()}")
        np.fill_diagonal(probs, np.maximum(resid, 0.0))

    row_err = np.abs(probs.sum(axis=1) - 1.0).max()
    if row_err > _STOCHASTIC_TOL:
        raise RuntimeError(f"rows deviate from stochastic by {row_err}")
    probs.setflags(write=False)
    return TransitionMatrix(kind=kind, probs=probs)


# ---------------------------------------------------------------------------
# Joint two-token chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TokenPair:
    """Positions of two marked tokens; met stays set once set."""

    x: int
    y: int
    variant: str = "x"
    met: bool = False


@dataclass(frozen=True)
class JointOutcome:
    x: int
    y: int
    met: bool
    prob: float


@dataclass(frozen=True)
class JointDistribution:
    """All one-tick outcomes of the joint chain from a token pair."""

    variant: str
    start: tuple[int, int]
    outcomes: tuple[JointOutcome, ...]
    clamped: bool

    @property
    def total(self) -> float:
        return sum(o.prob for o in self.outcomes)

    @property
    def meeting_prob(self) -> float:
        return sum(o.prob for o in self.outcomes if o.met)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _check_pair(g: Graph, x: int, y: int) -> None:
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise ValueError(f"token positions ({x}, {y}) out of range for n={g.n}")
    if x == y:
        raise ValueError("tokens must start on distinct nodes")


def _edge_prob(g: Graph, u: int, v: int) -> float:
    # activation probability of edge (u, v): initiated from either side
    return (1.0 / len(g.adjacency[u]) + 1.0 / len(g.adjacency[v])) / g.n


def _move_mass(g: Graph, x: int) -> float:
    return sum(_edge_prob(g, x, i) for i in g.adjacency[x])


def joint_outcomes(g: Graph, x: int, y: int, variant: str = "x") -> JointDistribution:
    """Enumerate every one-tick outcome of the joint chain with its probability."""
    _check_variant(variant)
    _check_pair(g, x, y)
    adjacent = g.has_edge(x, y)
    mv_x = _move_mass(g, x)
    mv_y = _move_mass(g, y)
    out: list[JointOutcome] = []
    clamped = False

    if not adjacent:
        for i in g.adjacency[x]:
            out.append(JointOutcome(i, y, False, _edge_prob(g, x, i)))
        for j in g.adjacency[y]:
            out.append(JointOutcome(x, j, False, _edge_prob(g, y, j)))
        stay = max(0.0, 1.0 - mv_x - mv_y)
        if stay > 0.0:
            out.append(JointOutcome(x, y, False, stay))
    else:
        pxy = _edge_prob(g, x, y)
        for i in g.adjacency[x]:
            if i != y:
                out.append(JointOutcome(i, y, False, _edge_prob(g, x, i)))
        for j in g.adjacency[y]:
            if j != x:
                out.append(JointOutcome(x, j, False, _edge_prob(g, y, j)))
        stay_x = max(0.0, 1.0 - mv_x - mv_y + pxy)
        if variant == "x":
            out.append(JointOutcome(y, x, True, pxy))
            if stay_x > 0.0:
                out.append(JointOutcome(x, y, False, stay_x))
        else:
            meet = min(2.0 * pxy, pxy + stay_x)
            clamped = meet < 2.0 * pxy * (1.0 - 1e-12)
            out.append(JointOutcome(x, y, True, meet))
            stay = stay_x - (meet - pxy)
            if stay > 0.0:
                out.append(JointOutcome(x, y, False, stay))

    return JointDistribution(
        variant=variant, start=(x, y), outcomes=tuple(out), clamped=clamped
    )


def validate_joint_distribution(g: Graph, x: int, y: int, variant: str = "x") -> JointDistribution:
    """Enumerate outcomes and verify they form a probability distribution.

    Raises RuntimeError when any outcome probability leaves [0, 1] or the
    total misses 1 beyond 1e-12; a True ``clamped`` flag marks pairs where
    the doubled xprime meeting mass was not fully realizable.
    """
    dist = joint_outcomes(g, x, y, variant)
    for o in dist.outcomes:
        if not (-_STOCHASTIC_TOL <= o.prob <= 1.0 + _STOCHASTIC_TOL):
            raise RuntimeError(f"outcome probability {o.prob} outside [0, 1] at {dist.start}")
    if abs(dist.total - 1.0) > _STOCHASTIC_TOL:
        raise RuntimeError(f"outcome probabilities sum to {dist.total} at {dist.start}")
    return dist


def joint_step(pair: TokenPair, g: Graph, rng: np.random.Generator) -> TokenPair:
    """Advance the joint chain by one global tick.

    Samples the physical activation (initiator, neighbor) exactly as the
    engine does; tokens ride activations of their incident edges.
    """
    _check_variant(pair.variant)
    if pair.met:
        raise ValueError("joint_step called on a met pair")
    _check_pair(g, pair.x, pair.y)
    x, y = pair.x, pair.y
    i = int(rng.integers(g.n))
    nbrs = g.adjacency[i]
    j = nbrs[int(rng.integers(len(nbrs)))]

    hit_x = i == x or j == x
    hit_y = i == y or j == y
    if hit_x and hit_y:
        # the tokens' shared edge fired: they cross and meet
        return TokenPair(x=y, y=x, variant=pair.variant, met=True)
    if hit_x:
        return TokenPair(x=(j if i == x else i), y=y, variant=pair.variant)
    if hit_y:
        return TokenPair(x=x, y=(j if i == y else i), variant=pair.variant)
    if pair.variant == "xprime" and g.has_edge(x, y):
        # convert (up to) pxy worth of both-stay mass into meetings
        pxy = _edge_prob(g, x, y)
        stay = 1.0 - _move_mass(g, x) - _move_mass(g, y) + pxy
        if stay > 0.0 and float(rng.random()) * stay < min(pxy, stay):
            return TokenPair(x=x, y=y, variant=pair.variant, met=True)
    return pair


# ---------------------------------------------------------------------------
# Meeting times: exact absorbing-chain solve and Monte Carlo estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeetingEstimate:
    """Monte Carlo meeting-time estimate for one start pair or a worst-pair sweep."""

    mean_ticks: float
    std_error: float
    trials: int
    variant: str
    start: tuple[int, int] | str
    pair: tuple[int, int]
    table: dict[tuple[int, int], tuple[float, float]] | None = None


def exact_meeting_times(g: Graph, variant: str = "x") -> np.ndarray:
    """Expected meeting ticks for every ordered start pair, by linear solve.

    Treats met as absorbing on the n^2 joint state space and solves
    (I - Q) m = 1 over the n(n-1) transient pair states.  Returns an
    n x n matrix with zero diagonal.
    """
    _check_variant(variant)
    n = g.n
    states = [(x, y) for x in range(n) for y in range(n) if x != y]
    index = {s: k for k, s in enumerate(states)}
    q = np.zeros((len(states), len(states)))
    for k, (x, y) in enumerate(states):
        for o in joint_outcomes(g, x, y, variant).outcomes:
            if not o.met:
                q[k, index[(o.x, o.y)]] += o.prob
    m = np.linalg.solve(np.eye(len(states)) - q, np.ones(len(states)))
    out = np.zeros((n, n))
    for k, (x, y) in enumerate(states):
        out[x, y] = m[k]
    return out


def estimate_meeting_time(
    g: Graph,
    variant: str,
    start,
    trials: int,
    rng: np.random.Generator,
    tick_cap: int = MEETING_TICK_CAP,
) -> MeetingEstimate:
    """Monte Carlo mean ticks until two tokens meet.

    start is an explicit (x, y) pair or "worst", which sweeps every
    unordered start pair (the chain is symmetric under token exchange)
    and reports the pair with the largest mean.
    """
    _check_variant(variant)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(start, str):
        if start != "worst":
            raise ValueError(f"start must be a pair or 'worst', got {start!r}")
        pairs = [(x, y) for x in range(g.n) for y in range(x + 1, g.n)]
        label: tuple[int, int] | str = "worst over all pairs"
    else:
        x, y = int(start[0]), int(start[1])
        _check_pair(g, x, y)
        pairs = [(x, y)]
        label = (x, y)

    xs = np.repeat(np.array([p[0] for p in pairs], dtype=np.int64), trials)
    ys = np.repeat(np.array([p[1] for p in pairs], dtype=np.int64), trials)
    pair_idx = np.repeat(np.arange(len(pairs)), trials)
    ticks = _simulate_meeting_batch(g, variant, xs, ys, rng, tick_cap)

    t = ticks.astype(np.float64)
    sums = np.bincount(pair_idx, weights=t, minlength=len(pairs))
    means = sums / trials
    if trials > 1:
        sumsq = np.bincount(pair_idx, weights=t * t, minlength=len(pairs))
        var = np.maximum(sumsq - sums * sums / trials, 0.0) / (trials - 1)
        ses = np.sqrt(var / trials)
    else:
        ses = np.zeros(len(pairs))

    worst = int(np.argmax(means))
    table = {p: (float(means[k]), float(ses[k])) for k, p in enumerate(pairs)}
    return MeetingEstimate(
        mean_ticks=float(means[worst]),
        std_error=float(ses[worst]),
        trials=trials,
        variant=variant,
        start=label,
        pair=pairs[worst],
        table=table,
    )


def _simulate_meeting_batch(g, variant, xs, ys, rng, tick_cap):
    """Vectorized lockstep simulation of many independent token pairs."""
    n = g.n
    deg = g.degrees()
    nbr = np.zeros((n, int(deg.max())), dtype=np.int64)
    for i, nbrs in enumerate(g.adjacency):
        nbr[i, : len(nbrs)] = nbrs
    xprime = variant == "xprime"
    if xprime:
        probs = transition_matrix(g, "biased").probs
        move_mass = 1.0 - np.diag(probs)

    x = np.array(xs, dtype=np.int64)
    y = np.array(ys, dtype=np.int64)
    ids = np.arange(x.size)
    ticks_out = np.zeros(x.size, dtype=np.int64)
    tick = 0
    while x.size:
        if tick >= tick_cap:
            raise RuntimeError(
                f"{x.size} trials still unmet after {tick_cap} ticks (variant {variant}, n={n})"
            )
        tick += 1
        k = x.size
        u = rng.integers(0, n, size=k)
        v = nbr[u, rng.integers(0, deg[u])]
        hit_x = (u == x) | (v == x)
        hit_y = (u == y) | (v == y)
        met = hit_x & hit_y
        move_x = hit_x & ~met
        move_y = hit_y & ~met
        x = np.where(move_x, np.where(u == x, v, u), x)
        y = np.where(move_y, np.where(u == y, v, u), y)
        if xprime:
            stay_ev = ~hit_x & ~hit_y
            pxy = probs[x, y]
            stay = 1.0 - move_mass[x] - move_mass[y] + pxy
            extra = stay_ev & (pxy > 0.0) & (rng.random(k) * stay < np.minimum(pxy, stay))
            met |= extra
        if met.any():
            ticks_out[ids[met]] = tick
            keep = ~met
            x = x[keep]
            y = y[keep]
            ids = ids[keep]
    return ticks_out
