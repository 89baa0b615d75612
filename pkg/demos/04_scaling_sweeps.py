"""Convergence-time scaling on stars and Erdos-Renyi graphs.

The general worst-case guarantee for the protocol is O(n^4 log n) ticks,
but specific topologies are far faster: stars and supercritical random
graphs both converge in Theta-ish n^2 log n.  This demo sweeps a reduced
size grid (the full desk grid 21..201 lives in the acceptance suite),
normalizes mean convergence ticks by n^2 ln n, and prints the reference
curve 0.63 n^2 log n in both log bases for comparison.  Run:
    python demos/04_scaling_sweeps.py          (~30 s)
"""

from votewalk import (
    SweepConfig,
    reference_curve,
    scaling_ratio,
    sweep_convergence,
    write_sweep_csv,
)

GRID = dict(n_min=21, n_max=101, n_step=20, runs=10, margin=1)

# ---------------------------------------------------------------------------
# 1. Star sweep
# ---------------------------------------------------------------------------
star = sweep_convergence(SweepConfig(topology="star", base_seed=11, **GRID))
print("star sweep (10 runs per size, margin 1):")
print("   n   mean ticks    /n^2 ln n    0.63 n^2 ln n  0.63 n^2 log2 n")
for row, (n, ref_ln, ref_log2) in zip(star.rows, reference_curve([r.n for r in star.rows])):
    print(f" {row.n:4d} {row.mean_ticks:12.1f} {row.mean_over_n2ln:12.3f} "
          f"{ref_ln:14.0f} {ref_log2:16.0f}")
shape = scaling_ratio(star, 2, 1)
print(f"n^2 ln n ratio spread across grid: {shape.spread:.3f} (flat curve = tight scaling)")
loose = scaling_ratio(star, 4, 1)
print(f"n^4 ln n ratios fall monotonically: {[round(r, 5) for r in loose.ratios]}")

# ---------------------------------------------------------------------------
# 2. Erdos-Renyi sweep at p = 5 ln n / n (fresh graph per run)
# ---------------------------------------------------------------------------
er = sweep_convergence(SweepConfig(topology="erdos_renyi", base_seed=13, **GRID))
print("\nerdos-renyi sweep (p = 5 ln n / n):")
print("   n   mean ticks    /n^2 ln n   mean edges")
for row in er.rows:
    print(f" {row.n:4d} {row.mean_ticks:12.1f} {row.mean_over_n2ln:12.3f} {row.mean_edges:11.1f}")
print(f"n^2 ln n ratio spread: {scaling_ratio(er, 2, 1).spread:.3f}")

# ---------------------------------------------------------------------------
# 3. The CSV emitted by the sweep command (first lines)
# ---------------------------------------------------------------------------
print("\nsweep CSV head:")
for line in write_sweep_csv(star).splitlines()[:7]:
    print(" ", line)
