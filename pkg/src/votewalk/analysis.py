"""Exact electric-network analysis of the biased opinion walk.

The biased walk is a random walk on a weighted graph whose edge weight
(conductance) equals the edge activation probability

    w_ij = (1/n)(1/d_i + 1/d_j),

with the unit-row remainder as a self-weight, so every node total w_i is
exactly 1 and the grand total w is n.  This yields:

    - hitting times H(x, y) by one dense linear solve per target;
    - effective resistances from the grounded weighted Laplacian;
    - the commute identity H(x, y) + H(y, x) = n * r_xy;
    - cyclic-tour symmetry over ordered triples;
    - hidden vertices (t with H(t, v) <= H(v, t) for all v), which exist
      for every reversible chain and anchor the potential function
      phi(x, y) = H(x, y) + H(y, t) - H(t, y);
    - a per-graph bound certificate: max H < n^4/2, every edge weight
      > 2/n^2 and every pairwise resistance < n^3/2.

All operations are pure functions of their inputs and safe to call
concurrently.  Dense factorization keeps them exact at the sizes this
package targets; Monte Carlo (see chains) covers anything larger.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .chains import TransitionMatrix, transition_matrix

HIDDEN_TOL = 1e-9

_WEIGHT_TOL = 1e-12
_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class WeightedView:
    """Conductance view of a graph under the biased-walk edge weights."""

    n: int
    weights: np.ndarray        # symmetric, zero diagonal, w_ij on edges
    self_weights: np.ndarray   # unit-row remainders w_ii
    node_totals: np.ndarray    # w_i = w_ii + sum_j w_ij, identically 1
    total: float               # w = sum_i w_i = n
    min_edge_weight: float


def edge_weights(g: Graph) -> WeightedView:
    """Compute the biased-walk conductances and verify their row identities."""
    n = g.n
    if n < 2:
        raise ValueError("edge weights require at least 2 nodes")
    deg = g.degrees().astype(np.float64)
    inv_deg = 1.0 / deg
    adj = np.zeros((n, n))
    for i, nbrs in enumerate(g.adjacency):
        adj[i, list(nbrs)] = 1.0
    weights = adj * (inv_deg[:, None] + inv_deg[None, :]) / n
    self_weights = 1.0 - weights.sum(axis=1)
    if self_weights.min() < -_WEIGHT_TOL:
        raise RuntimeError(f"negative self-weight {self_weights.min()}")
    self_weights = np.maximum(self_weights, 0.0)
    node_totals = weights.sum(axis=1) + self_weights
    if np.abs(node_totals - 1.0).max() > _WEIGHT_TOL:
        raise RuntimeError("node weight totals deviate from 1")
    weights.setflags(write=False)
    self_weights.setflags(write=False)
    node_totals.setflags(write=False)
    on_edges = weights[adj > 0]
    return WeightedView(
        n=n,
        weights=weights,
        self_weights=self_weights,
        node_totals=node_totals,
        total=float(node_totals.sum()),
        min_edge_weight=float(on_edges.min()),
    )


def hitting_matrix(p: TransitionMatrix | np.ndarray) -> np.ndarray:
    """Expected steps H[x, y] for the walk from x to first reach y.

    For each target y solves (I - Q) h = 1 with Q the transition matrix
    restricted to states != y; raises if any solve leaves a relative
    residual above 1e-10 or the restricted system is singular.
    """
    probs = p.probs if isinstance(p, TransitionMatrix) else np.asarray(p, dtype=np.float64)
    n = probs.shape[0]
    h = np.zeros((n, n))
    ones = np.ones(n - 1)
    for y in range(n):
        keep = [i for i in range(n) if i != y]
        m = np.eye(n - 1) - probs[np.ix_(keep, keep)]
        sol = np.linalg.solve(m, ones)
        residual = np.abs(m @ sol - ones).max() / max(1.0, np.abs(sol).max())
        if residual > _RESIDUAL_TOL:
            raise RuntimeError(f"hitting solve residual {residual} for target {y}")
        h[keep, y] = sol
    return h


def _laplacian(wv: WeightedView) -> np.ndarray:
    strengths = wv.weights.sum(axis=1)
    return np.diag(strengths) - wv.weights


def effective_resistance(wv: WeightedView, x: int, y: int) -> float:
    """Two-terminal resistance between x and y in the conductance network.

    Grounds y, injects unit current at x, and reads the potential at x.
    """
    if x == y:
        raise ValueError("effective resistance requires distinct nodes")
    lap = _laplacian(wv)
    keep = [i for i in range(wv.n) if i != y]
    rhs = np.zeros(wv.n - 1)
    rhs[keep.index(x)] = 1.0
    potential = np.linalg.solve(lap[np.ix_(keep, keep)], rhs)
    return float(potential[keep.index(x)])


def resistance_matrix(wv: WeightedView) -> np.ndarray:
    """All pairwise effective resistances from one grounded factorization."""
    lap = _laplacian(wv)
    keep = list(range(1, wv.n))
    inv = np.linalg.solve(lap[np.ix_(keep, keep)], np.eye(wv.n - 1))
    k = np.zeros((wv.n, wv.n))
    k[1:, 1:] = inv
    d = np.diag(k)
    r = d[:, None] + d[None, :] - 2.0 * k
    np.fill_diagonal(r, 0.0)
    return r


def commute_identity_check(h: np.ndarray, wv: WeightedView) -> float:
    """Max relative deviation of H(x,y) + H(y,x) from w * r_xy over all pairs."""
    r = resistance_matrix(wv)
    commute = h + h.T
    expected = wv.total * r
    iu = np.triu_indices(wv.n, k=1)
    if not iu[0].size:
        return 0.0
    return float(np.abs((commute[iu] - expected[iu]) / expected[iu]).max())


def cyclic_tour_check(h: np.ndarray, x: int, y: int, z: int) -> float:
    """Absolute deviation of the two tour orders x->y->z->x and x->z->y->x."""
    if len({x, y, z}) != 3:
        raise ValueError("cyclic tour requires three distinct nodes")
    forward = h[x, y] + h[y, z] + h[z, x]
    backward = h[x, z] + h[z, y] + h[y, x]
    return float(abs(forward - backward))


def is_hidden(h: np.ndarray, t: int, tol: float = HIDDEN_TOL) -> bool:
    """True iff t is no harder to reach than to leave: H(t,v) <= H(v,t) for all v."""
    n = h.shape[0]
    others = [v for v in range(n) if v != t]
    return all(h[t, v] <= h[v, t] + tol for v in others)


def hidden_vertices(h: np.ndarray, tol: float = HIDDEN_TOL) -> tuple[int, ...]:
    """All hidden vertices; non-empty for every reversible walk.

    An empty result is a hard failure (it would contradict the existence
    guarantee for reversible chains), so it raises RuntimeError.
    """
    found = tuple(t for t in range(h.shape[0]) if is_hidden(h, t, tol))
    if not found:
        raise RuntimeError("no hidden vertex found; reversible chains must have one")
    return found


def potential_phi(h: np.ndarray, t: int, x: int, y: int, tol: float = HIDDEN_TOL) -> float:
    """Potential phi(x, y) = H(x, y) + H(y, t) - H(t, y) anchored at hidden t.

    Symmetric in (x, y) by the cyclic-tour identity; upper-bounds the
    coupled chain's meeting times.
    """
    if not is_hidden(h, t, tol):
        raise ValueError(f"anchor {t} is not a hidden vertex")
    return float(h[x, y] + h[y, t] - h[t, y])


@dataclass(frozen=True)
class BoundReport:
    """Certificate values and pass/fail flags for the worst-case bounds."""

    n: int
    max_hitting: float
    n4_over_2: float
    min_edge_weight: float
    two_over_n2: float
    max_resistance: float
    n3_over_2: float
    hidden_vertices: tuple[int, ...]

    @property
    def hitting_ok(self) -> bool:
        return self.max_hitting < self.n4_over_2

    @property
    def weight_ok(self) -> bool:
        return self.min_edge_weight > self.two_over_n2

    @property
    def resistance_ok(self) -> bool:
        return self.max_resistance < self.n3_over_2

    @property
    def passed(self) -> bool:
        return self.hitting_ok and self.weight_ok and self.resistance_ok

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "max_hitting": self.max_hitting,
            "n4_over_2": self.n4_over_2,
            "min_edge_weight": self.min_edge_weight,
            "two_over_n2": self.two_over_n2,
            "max_resistance": self.max_resistance,
            "n3_over_2": self.n3_over_2,
            "hidden_vertices": list(self.hidden_vertices),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def bound_report(g: Graph) -> BoundReport:
    """Evaluate every certificate inequality for one connected graph.

    A failed inequality is reported, not raised; it would falsify the
    worst-case analysis and is treated as a test failure downstream.
    """
    wv = edge_weights(g)
    h = hitting_matrix(transition_matrix(g, "biased"))
    r = resistance_matrix(wv)
    n = g.n
    iu = np.triu_indices(n, k=1)
    return BoundReport(
        n=n,
        max_hitting=float(h.max()),
        n4_over_2=n**4 / 2.0,
        min_edge_weight=wv.min_edge_weight,
        two_over_n2=2.0 / n**2,
        max_resistance=float(r[iu].max()),
        n3_over_2=n**3 / 2.0,
        hidden_vertices=hidden_vertices(h),
    )
