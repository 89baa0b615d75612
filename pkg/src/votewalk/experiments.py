"""Convergence-time sweeps and worst-case bound checks at desk scale.

A sweep measures mean convergence ticks over a grid of network sizes for
star or Erdos-Renyi topologies (any deterministic topology is accepted
for testing).  Per-run seeds derive from the base seed, N, and the run
index through a fixed 64-bit mix, so sweeps reproduce byte-identically
regardless of worker count or execution order.  A fresh ER graph is
drawn per run (the ensemble average), with p = 5 ln(N) / N.

Natural log is used for every internally computed "log N"; reference
curves are emitted in both ln and log2 since only the constant differs.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import hitting_matrix
from .chains import MeetingEstimate, estimate_meeting_time, transition_matrix
from .engine import DEFAULT_MAX_TICKS, run
from .graphs import Graph, erdos_renyi_connected, make_topology
from .protocol import init_state
from .seeding import mix64

SWEEP_TOPOLOGIES = ("star", "erdos_renyi", "complete", "path", "cycle")

DEFAULT_ER_COEFF = 5.0

SWEEP_CSV_HEADER = (
    "n,runs,margin,mean_ticks,std_ticks,min_ticks,max_ticks,"
    "nonconverged,mean_over_n2ln,mean_ticks_over_n"
)


@dataclass(frozen=True)
class SweepConfig:
    topology: str
    n_min: int
    n_max: int
    n_step: int
    runs: int
    margin: int = 1
    base_seed: int = 0
    max_ticks: int = DEFAULT_MAX_TICKS
    er_coeff: float = DEFAULT_ER_COEFF
    jobs: int = 1

    def n_values(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_step))

    def edge_probability(self, n: int) -> float | None:
        if self.topology != "erdos_renyi":
            return None
        return min(1.0, self.er_coeff * math.log(n) / n)

    def validate(self) -> None:
        if self.topology not in SWEEP_TOPOLOGIES:
            raise ValueError(f"topology must be one of {SWEEP_TOPOLOGIES}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.n_step < 1:
            raise ValueError("n_step must be >= 1")
        if not 2 <= self.n_min <= self.n_max:
            raise ValueError("need 2 <= n_min <= n_max")
        if self.max_ticks < 1:
            raise ValueError("max_ticks must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        for n in self.n_values():
            if not 0 <= self.margin <= n:
                raise ValueError(f"margin {self.margin} out of range for n={n}")
            if (n + self.margin) % 2 != 0:
                raise ValueError(
                    f"margin {self.margin} and n={n} have mismatched parity; "
                    "strong counts would not be integers"
                )


@dataclass(frozen=True)
class SweepRunRecord:
    n: int
    run_index: int
    seed: int
    ticks: int
    converged: bool
    final_sign: int | None
    edges: int


@dataclass(frozen=True)
class SweepRow:
    n: int
    runs: int
    margin: int
    mean_ticks: float
    std_ticks: float
    min_ticks: int
    max_ticks: int
    nonconverged: int
    mean_over_n2ln: float
    mean_ticks_over_n: float
    mean_edges: float


@dataclass(frozen=True)
class SweepSummary:
    config: SweepConfig
    rows: tuple[SweepRow, ...]
    records: tuple[SweepRunRecord, ...]


def _execute_run(payload):
    topology, n, p, margin, seed, max_ticks = payload
    rng = np.random.default_rng(seed)
    if p is None:
        g = make_topology(topology, n)
    else:
        g = erdos_renyi_connected(n, p, rng)
    strong_pos = (n + margin) // 2
    s0 = init_state(n, strong_pos, n - strong_pos, rng)
    result = run(g, s0, rng, max_ticks=max_ticks, seed=seed)
    return result.ticks, result.converged, result.final_sign, g.m


def sweep_convergence(cfg: SweepConfig) -> SweepSummary:
    """Run the full grid and aggregate per-N statistics.

    Runs are independent and may execute on worker processes; output is
    keyed by (N, run index) and identical for any job count.
    """
    cfg.validate()
    tasks = [
        (n, r, mix64(cfg.base_seed, n, r))
        for n in cfg.n_values()
        for r in range(cfg.runs)
    ]
    payloads = [
        (cfg.topology, n, cfg.edge_probability(n), cfg.margin, seed, cfg.max_ticks)
        for n, r, seed in tasks
    ]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(_execute_run, payloads, chunksize=4))
    else:
        outcomes = [_execute_run(p) for p in payloads]

    records = tuple(
        SweepRunRecord(
            n=n, run_index=r, seed=seed,
            ticks=ticks, converged=conv, final_sign=sign, edges=edges,
        )
        for (n, r, seed), (ticks, conv, sign, edges) in zip(tasks, outcomes)
    )

    rows = []
    for n in cfg.n_values():
        ticks = np.array([rec.ticks for rec in records if rec.n == n], dtype=np.float64)
        edges = np.array([rec.edges for rec in records if rec.n == n], dtype=np.float64)
        nonconv = sum(1 for rec in records if rec.n == n and not rec.converged)
        mean = float(ticks.mean())
        rows.append(
            SweepRow(
                n=n,
                runs=cfg.runs,
                margin=cfg.margin,
                mean_ticks=mean,
                std_ticks=float(ticks.std(ddof=1)) if cfg.runs > 1 else 0.0,
                min_ticks=int(ticks.min()),
                max_ticks=int(ticks.max()),
                nonconverged=nonconv,
                mean_over_n2ln=mean / (n**2 * math.log(n)),
                mean_ticks_over_n=mean / n,
                mean_edges=float(edges.mean()),
            )
        )
    return SweepSummary(config=cfg, rows=tuple(rows), records=records)


def write_sweep_csv(summary: SweepSummary) -> str:
    """Render a sweep as CSV with '#' metadata lines echoing the config."""
    cfg = summary.config
    lines = [
        "# votewalk sweep",
        (
            f"# topology={cfg.topology} n_min={cfg.n_min} n_max={cfg.n_max}"
            f" n_step={cfg.n_step} runs={cfg.runs} margin={cfg.margin}"
            f" base_seed={cfg.base_seed} max_ticks={cfg.max_ticks}"
        ),
        "# seed_rule=mix64(base_seed,n,run_index)",
    ]
    if cfg.topology == "erdos_renyi":
        lines.append(
            f"# er_rule=p={cfg.er_coeff:g}*ln(n)/n fresh_graph_per_run=true"
        )
        lines.append(
            "# mean_edges="
            + " ".join(f"{row.n}:{row.mean_edges:.2f}" for row in summary.rows)
        )
    lines.append(SWEEP_CSV_HEADER)
    for row in summary.rows:
        lines.append(
            f"{row.n},{row.runs},{row.margin},{row.mean_ticks:.6f},{row.std_ticks:.6f},"
            f"{row.min_ticks},{row.max_ticks},{row.nonconverged},"
            f"{row.mean_over_n2ln:.6f},{row.mean_ticks_over_n:.6f}"
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ScalingReport:
    exponent: float
    log_power: int
    ns: tuple[int, ...]
    ratios: tuple[float, ...]
    spread: float


def scaling_ratio(summary: SweepSummary, exponent: float, log_power: int) -> ScalingReport:
    """Normalize mean ticks by N^exponent * (ln N)^log_power per grid point.

    The spread (max ratio / min ratio) measures how flat the normalized
    curve is across the grid.
    """
    if log_power not in (0, 1):
        raise ValueError("log_power must be 0 or 1")
    if not summary.rows:
        raise ValueError("summary has no rows")
    ns = []
    ratios = []
    for row in summary.rows:
        denom = row.n**exponent * (math.log(row.n) ** log_power)
        ns.append(row.n)
        ratios.append(row.mean_ticks / denom)
    return ScalingReport(
        exponent=exponent,
        log_power=log_power,
        ns=tuple(ns),
        ratios=tuple(ratios),
        spread=max(ratios) / min(ratios),
    )


def reference_curve(ns, coeff: float = 0.63) -> list[tuple[int, float, float]]:
    """Reference values coeff * n^2 * log(n) in both ln and log2 bases."""
    return [
        (n, coeff * n**2 * math.log(n), coeff * n**2 * math.log2(n))
        for n in ns
    ]


@dataclass(frozen=True)
class MeetingHittingReport:
    """Worst-case meeting versus hitting checks for one graph."""

    n: int
    max_hitting: float
    n4_over_2: float
    meeting_x: MeetingEstimate
    meeting_xprime: MeetingEstimate
    meeting_below_4h: bool
    coupling_ok: bool
    hitting_below_n4_half: bool

    @property
    def all_ok(self) -> bool:
        return self.meeting_below_4h and self.coupling_ok and self.hitting_below_n4_half


def meeting_vs_hitting(
    g: Graph,
    trials: int,
    rng: np.random.Generator,
) -> MeetingHittingReport:
    """Check the meeting/hitting inequalities on one connected graph.

    Computes the exact hitting maximum and Monte Carlo worst-pair meeting
    estimates for both joint-chain variants, then evaluates:
    worst meeting < 4 * max hitting; every per-pair meeting <= twice the
    worst-pair coupled meeting plus three combined standard errors (the
    coupled process restarts from an arbitrary pair after each crossing,
    so its worst pair is the binding quantity); max hitting < n^4 / 2.
    Failures are reported in the record, never raised.
    """
    if g.n > 200:
        raise ValueError("dense solves are limited to n <= 200")
    h = hitting_matrix(transition_matrix(g, "biased"))
    max_h = float(h.max())
    est_x = estimate_meeting_time(g, "x", "worst", trials, rng)
    est_xp = estimate_meeting_time(g, "xprime", "worst", trials, rng)

    coupling_ok = True
    for _, (mean_x, se_x) in est_x.table.items():
        slack = 3.0 * math.sqrt(se_x**2 + 4.0 * est_xp.std_error**2)
        if mean_x > 2.0 * est_xp.mean_ticks + slack:
            coupling_ok = False
            break

    return MeetingHittingReport(
        n=g.n,
        max_hitting=max_h,
        n4_over_2=g.n**4 / 2.0,
        meeting_x=est_x,
        meeting_xprime=est_xp,
        meeting_below_4h=est_x.mean_ticks < 4.0 * max_h,
        coupling_ok=coupling_ok,
        hitting_below_n4_half=max_h < g.n**4 / 2.0,
    )
