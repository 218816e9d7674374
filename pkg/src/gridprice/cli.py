"""Command-line entry point: ``gridprice <subcommand> ...``.

Exit status is 0 on success, 2 on validation errors and 3 when an enumeration
budget (``GRIDPRICE_BUDGET``) would be exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, estimation, experiment, graph, hardness, heuristics, model, scenarios

EXIT_INVALID = 2
EXIT_BUDGET = 3


def _read(path: str | None) -> str:
    return sys.stdin.read() if path in (None, "-") else Path(path).read_text()


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _result_json(res: heuristics.SolveResult) -> dict:
    return {
        "schedule": list(res.schedule),
        "objective_value": res.objective_value,
        "elapsed_ms": res.elapsed * 1000.0,
        "info": res.info,
    }


def cmd_simulate(args) -> int:
    sc = model.Scenario.from_json(_read(args.scenario))
    profile = model.simulate(sc, _ints(args.schedule))
    out = {"u": list(profile.u), "consumed_at": {str(k): v for k, v in profile.consumed_at.items()}, "peak": model.peak(profile)}
    if sc.supply is not None:
        out["mse"] = model.mse(profile, sc.supply)
    print(json.dumps(out))
    return 0


def cmd_optimize(args) -> int:
    sc = model.Scenario.from_json(_read(args.scenario))
    objective = model.Objective.parse(args.objective)
    if args.online:
        name = {"window": "sliding_window"}.get(args.algo, args.algo)
        if name not in estimation.ALGORITHMS:
            raise model.ScenarioError([f"--online supports greedy, uniform and window, not {args.algo}"])
        res = estimation.run_online(sc, name, objective, W=args.window or 1, H=args.history)
    elif args.algo == "greedy":
        res = heuristics.greedy(sc, objective)
    elif args.algo == "uniform":
        res = heuristics.uniform_best(sc, objective)
    elif args.algo == "window":
        if args.window is None:
            raise model.ScenarioError(["--algo window needs --window W"])
        res = heuristics.sliding_window(sc, objective, args.window)
    elif args.algo == "dijkstra":
        res = graph.optimal(sc, objective)
    else:
        res = heuristics.brute_force(sc, objective)
    print(json.dumps(_result_json(res)))
    return 0


def cmd_experiment(args) -> int:
    cfg = experiment.ExperimentConfig.from_dict(json.loads(_read(args.config)))
    schedules = [] if args.emit_schedules else None
    rows = experiment.run_experiment(cfg, schedules)
    csv_text = experiment.rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.json:
        Path(args.json).write_text(experiment.rows_to_json(rows))
    if args.emit_schedules:
        Path(args.emit_schedules).write_text("".join(json.dumps(s) + "\n" for s in schedules))
    return 0


def cmd_analyze_ratio(args) -> int:
    print("alpha,E_max,E_min,ratio")
    for a in _floats(args.alphas):
        rb = analysis.ratio_bound([a], args.K, args.eps)
        emax, emin, r = rb.per_class[0]
        print(f"{a!r},{emax!r},{emin!r},{'unbounded' if rb.unbounded else repr(r)}")
    return 0


def cmd_reduce(args) -> int:
    inst = hardness.SubsetSumInstance.from_dict(json.loads(_read(args.instance)))
    print(hardness.reduce_report(inst))
    return 0


def cmd_graph_size(args) -> int:
    try:
        print(graph.graph_stats_json(args.N, args.K))
    except ValueError as e:
        raise model.ScenarioError([str(e)]) from None
    return 0


def cmd_gen(args) -> int:
    demand = scenarios.Empirical(tuple(_floats(args.empirical))) if args.empirical else scenarios.Homogeneous(args.demand)
    sc = scenarios.generate_scenario(args.K, args.N, _floats(args.alphas), demand, args.seed, supply=args.supply)
    print(sc.to_json())
    return 0


def cmd_ingest(args) -> int:
    sc = scenarios.ingest_jobs_csv(args.csv, args.N, args.seed, args.K)
    print(sc.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridprice", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="aggregate consumption of a scenario under a schedule")
    s.add_argument("--scenario", required=True, help="scenario JSON file ('-' for stdin)")
    s.add_argument("--schedule", required=True, help="comma-separated threshold indices, one per period")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("optimize", help="compute a price schedule")
    s.add_argument("--scenario", required=True)
    s.add_argument("--algo", choices=["greedy", "window", "uniform", "dijkstra", "oracle"], default="greedy")
    s.add_argument("--objective", default="peak", help="peak or mse")
    s.add_argument("--window", type=int)
    s.add_argument("--online", action="store_true", help="hide future arrivals from the algorithm")
    s.add_argument("--history", type=int, default=estimation.DEFAULT_HISTORY, help="rate-estimation window H")
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("experiment", help="run an approximation-ratio experiment")
    s.add_argument("--config", required=True, help="ExperimentConfig as JSON")
    s.add_argument("--out", help="CSV report path (default stdout)")
    s.add_argument("--json", help="also write the report as JSON")
    s.add_argument("--emit-schedules", help="write every solved schedule as JSON lines")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("analyze-ratio", help="E[A_max], E[A_min] and their ratio per arrival rate")
    s.add_argument("--K", type=int, default=100)
    s.add_argument("--alphas", default="1,2,3,4,5,6,7,8,9,10")
    s.add_argument("--eps", type=float, default=analysis.DEFAULT_EPS)
    s.set_defaults(func=cmd_analyze_ratio)

    s = sub.add_parser("reduce", help="reduce a Subset-Sum instance and verify it")
    s.add_argument("--instance", default="-", help='JSON {"a": [...], "B": ...}')
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("graph-size", help="vertex and edge counts of the layered graph")
    s.add_argument("N", type=int)
    s.add_argument("K", type=int)
    s.set_defaults(func=cmd_graph_size)

    s = sub.add_parser("gen", help="generate a seeded Poisson scenario")
    s.add_argument("--K", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--alphas", required=True, help="comma-separated rate per deadline class")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--demand", type=float, default=1.0, help="homogeneous demand per job")
    s.add_argument("--empirical", help="comma-separated demand values to sample from")
    s.add_argument("--supply", choices=["flat"], help="attach a supply vector")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("ingest", help="build a scenario from a job_id,arrival,demand CSV")
    s.add_argument("csv")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--K", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_ingest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except model.BudgetExceeded as e:
        print(f"budget refused: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (model.ScenarioError, hardness.InstanceError, ValueError, json.JSONDecodeError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
