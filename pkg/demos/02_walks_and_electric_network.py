"""From gossip activations to random walks to resistor networks.

A single marked opinion hops across an edge whenever either endpoint
initiates that edge's activation, so its law is the "biased" walk with
hop probability (1/n)(1/d_i + 1/d_j).  That walk is a weighted-graph
walk whose conductances are exactly those hop probabilities, which buys
the whole electric-network toolkit: commute times equal n times the
effective resistance, and worst-case hitting times are certified below
n^4/2 on every connected graph.  Run:
    python demos/02_walks_and_electric_network.py
"""

import numpy as np

from votewalk import (
    bound_report,
    commute_identity_check,
    edge_weights,
    effective_resistance,
    erdos_renyi_connected,
    hidden_vertices,
    hitting_matrix,
    make_topology,
    transition_matrix,
)

# ---------------------------------------------------------------------------
# 1. Three walks on the 5-node star (hub = node 0)
# ---------------------------------------------------------------------------
g = make_topology("star", 5)
for kind in ("simple", "natural", "biased"):
    p = transition_matrix(g, kind).probs
    print(f"{kind} walk: hub row {np.round(p[0], 3)}, leaf row {np.round(p[1], 3)}")

pb = transition_matrix(g, "biased").probs
print("\nbiased walk is symmetric and doubly stochastic:")
print("  max |P - P.T| =", np.abs(pb - pb.T).max())
print("  uniform row vector is stationary:", np.abs(pb.mean(axis=0) - 0.2).max() < 1e-15)

# ---------------------------------------------------------------------------
# 2. Star closed forms: H(leaf,hub)=n-1, H(hub,leaf)=(n-1)^2, H(leaf,leaf')=n(n-1)
# ---------------------------------------------------------------------------
h = hitting_matrix(transition_matrix(g, "biased"))
print(f"\nstar(5) hitting times: leaf->hub {h[1,0]:.1f}, hub->leaf {h[0,1]:.1f}, "
      f"leaf->leaf {h[1,2]:.1f}")

wv = edge_weights(g)
r = effective_resistance(wv, 1, 2)
print(f"leaf-leaf effective resistance {r:.1f} (two 1/w resistors in series, w=1/4)")
print(f"commute identity: H(1,2)+H(2,1) = {h[1,2]+h[2,1]:.1f} = n*r = {wv.total * r:.1f}")

# ---------------------------------------------------------------------------
# 3. Hidden vertices: nodes easier to reach than to leave
# ---------------------------------------------------------------------------
print("\nhidden vertices of star(5):", hidden_vertices(h), "(the leaves; never the hub)")

# ---------------------------------------------------------------------------
# 4. The bound certificate on an arbitrary connected graph
# ---------------------------------------------------------------------------
rng = np.random.default_rng(42)
gr = erdos_renyi_connected(25, 0.3, rng)
rep = bound_report(gr)
print(f"\nrandom G(25, 0.3) with {gr.m} edges:")
print(f"  max hitting   {rep.max_hitting:10.1f}  <  n^4/2 = {rep.n4_over_2:10.1f}")
print(f"  min weight    {rep.min_edge_weight:10.6f}  >  2/n^2 = {rep.two_over_n2:10.6f}")
print(f"  max resistance{rep.max_resistance:10.3f}  <  n^3/2 = {rep.n3_over_2:10.1f}")
print(f"  certificate pass: {rep.passed}")

hr = hitting_matrix(transition_matrix(gr, "biased"))
print(f"  commute-identity max relative deviation: {commute_identity_check(hr, edge_weights(gr)):.2e}")
