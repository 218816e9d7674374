"""Mean approximation ratio of the sliding window for W in {N, 2N, N^2} over K."""
from __future__ import annotations

import argparse
import sys

from gridprice.experiment import ExperimentConfig, rows_to_csv, run_experiment


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--objective", default="peak")
    p.add_argument("--K-min", type=int, default=10)
    p.add_argument("--K-max", type=int, default=50)
    p.add_argument("--K-step", type=int, default=5)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--online", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="write zero runtimes for byte-stable output")
    args = p.parse_args()
    cfg = ExperimentConfig(
        algorithms=["greedy", "uniform", "window"],
        objective=args.objective,
        K_values=list(range(args.K_min, args.K_max + 1, args.K_step)),
        N=args.N,
        trials=args.trials,
        seed=args.seed,
        online=args.online,
        timing=not args.no_timing,
    )
    sys.stdout.write(rows_to_csv(run_experiment(cfg)))


if __name__ == "__main__":
    main()
