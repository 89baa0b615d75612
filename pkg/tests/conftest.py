import math

import numpy as np

from votewalk.graphs import Graph, erdos_renyi_connected


def random_connected_graph(n: int, rng: np.random.Generator, p: float | None = None) -> Graph:
    """Connected G(n, p) sample at a mildly supercritical density."""
    if p is None:
        p = min(1.0, 2.0 * math.log(max(n, 2)) / n)
    return erdos_renyi_connected(n, p, rng)
