"""Command-line front end: gen, simulate, sweep, analyze, meet.

Every stochastic subcommand requires an explicit --seed; identical
arguments always reproduce byte-identical output, independent of --jobs.
Exit codes: 0 success, 1 validation/usage error, 2 runtime failure
(including a falsified bound certificate).
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import analysis, chains, engine, experiments, graphs, protocol

_TOPOLOGY_CHOICES = ("star", "complete", "path", "cycle", "er")


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="votewalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph and write it as an edge list")
    gen.add_argument("--topology", required=True, choices=_TOPOLOGY_CHOICES)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=None,
                     help="er edge probability (default 5*ln(n)/n)")
    gen.add_argument("--seed", type=int, default=None, help="required for er")
    gen.add_argument("--out", required=True)

    sim = sub.add_parser("simulate", help="run one gossip simulation")
    sim.add_argument("--graph", default=None, help="edge-list file")
    sim.add_argument("--topology", choices=_TOPOLOGY_CHOICES, default=None)
    sim.add_argument("--n", type=int, default=None)
    sim.add_argument("--p", type=float, default=None)
    sim.add_argument("--margin", type=int, required=True)
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--max-ticks", type=int, default=engine.DEFAULT_MAX_TICKS)
    sim.add_argument("--trace", default=None, help="write a trace CSV here")
    sim.add_argument("--sample-every", type=int, default=1)

    sweep = sub.add_parser("sweep", help="convergence-time sweep over a size grid")
    sweep.add_argument("--topology", required=True, choices=("star", "er"))
    sweep.add_argument("--n-min", type=int, required=True)
    sweep.add_argument("--n-max", type=int, required=True)
    sweep.add_argument("--n-step", type=int, required=True)
    sweep.add_argument("--runs", type=int, required=True)
    sweep.add_argument("--margin", type=int, required=True)
    sweep.add_argument("--seed", type=int, required=True)
    sweep.add_argument("--max-ticks", type=int, default=engine.DEFAULT_MAX_TICKS)
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.add_argument("--out", default=None)

    an = sub.add_parser("analyze", help="bound certificate and hitting extremes")
    an.add_argument("--graph", required=True)
    an.add_argument("--json", action="store_true")

    meet = sub.add_parser("meet", help="Monte Carlo meeting-time estimate")
    meet.add_argument("--graph", required=True)
    meet.add_argument("--variant", required=True, choices=("x", "xprime"))
    meet.add_argument("--trials", type=int, required=True)
    meet.add_argument("--seed", type=int, required=True)
    group = meet.add_mutually_exclusive_group(required=True)
    group.add_argument("--start", default=None, help="start pair as U,V")
    group.add_argument("--worst", action="store_true")

    return parser


def _load_graph(path: str) -> graphs.Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return graphs.from_edge_list(fh.read())


def _graph_from_args(args, rng_required: str) -> graphs.Graph:
    if args.topology is None or args.n is None:
        raise ValueError(f"{rng_required} needs --graph or --topology with --n")
    if args.topology == "er":
        if args.seed is None:
            raise ValueError("er topology requires --seed")
        p = args.p if args.p is not None else min(1.0, 5.0 * math.log(args.n) / args.n)
        rng = np.random.default_rng(args.seed)
        return graphs.erdos_renyi_connected(args.n, p, rng)
    return graphs.make_topology(args.topology, args.n)


def _cmd_gen(args) -> int:
    g = _graph_from_args(args, "gen")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(graphs.to_edge_list(g))
    return 0


def _cmd_simulate(args) -> int:
    if args.graph is not None:
        g = _load_graph(args.graph)
        source = f"graph={args.graph}"
    else:
        # er graphs draw from the same seeded stream used for the run,
        # matching the sweep convention
        rng_graph = np.random.default_rng(args.seed)
        if args.topology == "er":
            p = args.p if args.p is not None else min(1.0, 5.0 * math.log(args.n) / args.n)
            g = graphs.erdos_renyi_connected(args.n, p, rng_graph)
        else:
            if args.topology is None or args.n is None:
                raise ValueError("simulate needs --graph or --topology with --n")
            g = graphs.make_topology(args.topology, args.n)
        source = f"topology={args.topology} n={args.n}"
    n = g.n
    if not 0 <= args.margin <= n or (n + args.margin) % 2 != 0:
        raise ValueError(f"margin {args.margin} invalid for n={n} (parity or range)")
    rng = np.random.default_rng(args.seed)
    strong_pos = (n + args.margin) // 2
    s0 = protocol.init_state(n, strong_pos, n - strong_pos, rng)
    if args.trace is not None:
        if args.sample_every < 1:
            raise ValueError("--sample-every must be >= 1")
        result, rows = engine.run_traced(
            g, s0, rng, max_ticks=args.max_ticks,
            sample_every=args.sample_every, seed=args.seed,
        )
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(engine.write_trace_csv(rows))
    else:
        result = engine.run(g, s0, rng, max_ticks=args.max_ticks, seed=args.seed)
    print(f"# simulate {source} margin={args.margin} seed={args.seed} max_ticks={args.max_ticks}")
    print(f"converged={'true' if result.converged else 'false'}")
    print(f"ticks={result.ticks}")
    print(f"final_sign={result.final_sign if result.final_sign is not None else 'none'}")
    print(f"ticks_over_n={result.ticks / n:.6f}")
    return 0


def _cmd_sweep(args) -> int:
    topology = "erdos_renyi" if args.topology == "er" else args.topology
    cfg = experiments.SweepConfig(
        topology=topology,
        n_min=args.n_min,
        n_max=args.n_max,
        n_step=args.n_step,
        runs=args.runs,
        margin=args.margin,
        base_seed=args.seed,
        max_ticks=args.max_ticks,
        jobs=args.jobs,
    )
    summary = experiments.sweep_convergence(cfg)
    text = experiments.write_sweep_csv(summary)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    if not graphs.is_connected(g):
        raise ValueError("analyze requires a connected graph")
    report = analysis.bound_report(g)
    if args.json:
        print(report.to_json())
    else:
        h = analysis.hitting_matrix(chains.transition_matrix(g, "biased"))
        worst = np.unravel_index(np.argmax(h), h.shape)
        print(f"n={report.n}")
        print(f"max_hitting={report.max_hitting:.6f} (pair {worst[0]}->{worst[1]})"
              f" bound_n4_over_2={report.n4_over_2:.6f} ok={report.hitting_ok}")
        print(f"min_edge_weight={report.min_edge_weight:.8f}"
              f" bound_two_over_n2={report.two_over_n2:.8f} ok={report.weight_ok}")
        print(f"max_resistance={report.max_resistance:.6f}"
              f" bound_n3_over_2={report.n3_over_2:.6f} ok={report.resistance_ok}")
        print(f"hidden_vertices={','.join(str(t) for t in report.hidden_vertices)}")
        print(f"pass={'true' if report.passed else 'false'}")
    if not report.passed:
        print("bound certificate failed", file=sys.stderr)
        return 2
    return 0


def _cmd_meet(args) -> int:
    g = _load_graph(args.graph)
    if args.worst:
        start = "worst"
    else:
        parts = args.start.split(",")
        if len(parts) != 2:
            raise ValueError("--start expects U,V")
        start = (int(parts[0]), int(parts[1]))
    rng = np.random.default_rng(args.seed)
    est = chains.estimate_meeting_time(g, args.variant, start, args.trials, rng)
    print(f"# meet graph={args.graph} variant={args.variant}"
          f" trials={args.trials} seed={args.seed}")
    print(f"start={est.start}")
    print(f"pair={est.pair[0]},{est.pair[1]}")
    print(f"mean_ticks={est.mean_ticks:.6f}")
    print(f"std_error={est.std_error:.6f}")
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "analyze": _cmd_analyze,
    "meet": _cmd_meet,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"votewalk: error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"votewalk: runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
