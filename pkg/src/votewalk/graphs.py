"""Undirected simple graphs: construction, generators, and edge-list IO.

Graphs are immutable after construction and safe to share across threads.
Node ids are always 0..n-1; the hub of a star is node 0.

Edge-list file format (UTF-8 text):
    - lines starting with '#' are comments and ignored, blank lines skipped
    - first data line is "n m"
    - followed by exactly m lines "u v" (unordered, whitespace separated)
Serialization writes edges with u < v in lexicographic order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

DETERMINISTIC_TOPOLOGIES = ("star", "complete", "path", "cycle")

DEFAULT_ER_MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph in adjacency-list form.

    Invariants (enforced by ``from_edges``): adjacency is symmetric, has
    no self-loops, no duplicate neighbors, and node ids cover 0..n-1.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    m: int

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build a validated graph from an iterable of (u, v) pairs."""
        if n < 1:
            raise ValueError(f"node count must be positive, got {n}")
        neighbors: list[set[int]] = [set() for _ in range(n)]
        count = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if v in neighbors[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            neighbors[u].add(v)
            neighbors[v].add(u)
            count += 1
        adjacency = tuple(tuple(sorted(s)) for s in neighbors)
        return cls(n=n, adjacency=adjacency, m=count)

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self):
        """Yield edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)


def make_topology(kind: str, n: int) -> Graph:
    """Build a named deterministic topology on n nodes.

    Kinds: "star" (hub at node 0, n >= 2), "complete" (n >= 2),
    "path" (n >= 2), "cycle" (n >= 3).
    """
    if kind == "star":
        if n < 2:
            raise ValueError("star requires n >= 2")
        return Graph.from_edges(n, ((0, k) for k in range(1, n)))
    if kind == "complete":
        if n < 2:
            raise ValueError("complete requires n >= 2")
        return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))
    if kind == "path":
        if n < 2:
            raise ValueError("path requires n >= 2")
        return Graph.from_edges(n, ((k, k + 1) for k in range(n - 1)))
    if kind == "cycle":
        if n < 3:
            raise ValueError("cycle requires n >= 3")
        return Graph.from_edges(n, [(k, k + 1) for k in range(n - 1)] + [(n - 1, 0)])
    raise ValueError(f"unknown topology kind {kind!r}; expected one of {DETERMINISTIC_TOPOLOGIES}")


def erdos_renyi_connected(
    n: int,
    p: float,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_ER_MAX_ATTEMPTS,
) -> Graph:
    """Sample a connected G(n, p) graph, redrawing until connected.

    Each unordered pair is included independently with probability p.
    Raises RuntimeError after max_attempts disconnected draws (a signal
    that p is too small for the resample-until-connected strategy).
    """
    g, _ = erdos_renyi_with_attempts(n, p, rng, max_attempts)
    return g


def erdos_renyi_with_attempts(
    n: int,
    p: float,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_ER_MAX_ATTEMPTS,
) -> tuple[Graph, int]:
    """Like :func:`erdos_renyi_connected` but also returns the attempt count."""
    if not (0.0 < p <= 1.0):
        raise ValueError(f"edge probability must be in (0, 1], got {p}")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    if n < 1:
        raise ValueError(f"node count must be positive, got {n}")
    iu, ju = np.triu_indices(n, k=1)
    for attempt in range(1, max_attempts + 1):
        mask = rng.random(iu.size) < p
        g = Graph.from_edges(n, zip(iu[mask].tolist(), ju[mask].tolist()))
        if is_connected(g):
            return g, attempt
    raise RuntimeError(
        f"no connected G({n}, {p}) sample in {max_attempts} attempts; p is likely too small"
    )


def is_connected(g: Graph) -> bool:
    """True iff a traversal from node 0 reaches all n nodes."""
    if g.n == 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = 1
                reached += 1
                queue.append(v)
    return reached == g.n


def from_edge_list(text: str) -> Graph:
    """Parse the edge-list document format described in the module docstring."""
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ValueError("empty edge-list document")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"malformed header line {lines[0]!r}; expected 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError(f"malformed header line {lines[0]!r}; expected integers") from None
    if len(lines) - 1 != m:
        raise ValueError(f"header declares {m} edges but document has {len(lines) - 1} edge lines")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"malformed edge line {line!r}") from None
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    """Serialize a graph to the edge-list document format."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
