"""Approximation-ratio experiments over seeded synthetic scenarios."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .estimation import DEFAULT_HISTORY, run_online
from .graph import graph_size, optimal
from .heuristics import brute_force, default_budget, greedy, sliding_window, uniform_best
from .model import BudgetExceeded, Objective, Scenario, ScenarioError
from .scenarios import Empirical, Homogeneous, SplitMix64, generate_scenario

REPORT_FIELDS = ["algorithm", "K", "N", "W", "mean_ratio", "mean_runtime_ms", "trials"]
ALGORITHMS = ("greedy", "uniform", "window", "dijkstra", "oracle")


@dataclass
class ExperimentConfig:
    algorithms: list[str] = field(default_factory=lambda: ["greedy", "uniform", "window"])
    objective: str = "peak"
    K_values: list[int] = field(default_factory=lambda: [10, 20, 30])
    N: int = 3
    windows: list = field(default_factory=lambda: ["N", "2N", "N^2"])
    trials: int = 30
    seed: int = 0
    online: bool = False
    H: int = DEFAULT_HISTORY
    alphas: list[float] | None = None  # per deadline class; default 1.0 each
    demand: float | list[float] = 1.0  # a number (homogeneous) or a list to sample from
    timing: bool = True  # False writes 0 runtimes so reports are byte-identical
    budget: int | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ScenarioError([f"unknown config keys: {sorted(unknown)}"])
        cfg = cls(**d)
        cfg.check()
        return cfg

    def check(self) -> None:
        errors = []
        if self.trials < 1:
            errors.append("trials must be >= 1")
        if not self.K_values or min(self.K_values) < 1:
            errors.append("K_values must be positive")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            errors.append(f"unknown algorithms {bad}; expected {ALGORITHMS}")
        try:
            Objective.parse(self.objective)
        except ValueError as e:
            errors.append(str(e))
        if self.alphas is not None and len(self.alphas) != self.N:
            errors.append(f"alphas needs N={self.N} entries")
        for w in self.windows:
            try:
                window_size(w, self.N, max(self.K_values or [1]))
            except ValueError as e:
                errors.append(str(e))
        if errors:
            raise ScenarioError(errors)


@dataclass
class ReportRow:
    algorithm: str
    K: int
    N: int
    W: int | None
    mean_ratio: float | None  # None when no exact optimum was computable
    mean_runtime_ms: float
    trials: int


def window_size(token, N: int, K: int) -> int:
    """Resolve a window spec (int, 'N', '2N', 'N^2', 'K') to a size, clamped to K."""
    table = {"N": N, "2N": 2 * N, "N^2": N * N, "N2": N * N, "K": K}
    if isinstance(token, int):
        w = token
    elif str(token) in table:
        w = table[str(token)]
    else:
        try:
            w = int(token)
        except ValueError:
            raise ValueError(f"bad window spec {token!r}") from None
    if w < 1:
        raise ValueError(f"window size must be >= 1, got {token!r}")
    return min(w, K)


def trial_seed(seed: int, K: int, trial: int) -> int:
    return SplitMix64((seed * 1_000_003 + K) * 1_000_003 + trial).next_u64()


def make_scenario(cfg: ExperimentConfig, K: int, trial: int) -> Scenario:
    alphas = cfg.alphas if cfg.alphas is not None else [1.0] * cfg.N
    model = Empirical(tuple(cfg.demand)) if isinstance(cfg.demand, (list, tuple)) else Homogeneous(float(cfg.demand))
    supply = "flat" if Objective.parse(cfg.objective) is Objective.MSE else None
    return generate_scenario(K, cfg.N, alphas, model, trial_seed(cfg.seed, K, trial), supply=supply)


def optimum(scenario: Scenario, objective: Objective, budget: int) -> float | None:
    """Exact optimum from the graph search if it fits, else brute force, else None."""
    N, K = scenario.N, scenario.K
    try:
        if N >= 2 and K >= N and sum(graph_size(N, K)) <= budget:
            return optimal(scenario, objective, budget).objective_value
        if N**K <= budget:
            return brute_force(scenario, objective, budget).objective_value
    except BudgetExceeded:
        pass
    return None


def ratio(value: float, opt: float) -> float:
    if opt == 0:
        return 1.0 if value == 0 else math.inf
    return value / opt


def _solve(cfg: ExperimentConfig, algo: str, scenario: Scenario, objective: Objective, W: int | None, budget: int):
    if cfg.online and algo in ("greedy", "uniform", "window"):
        name = "sliding_window" if algo == "window" else algo
        return run_online(scenario, name, objective, W=W or 1, H=cfg.H, budget=budget)
    if algo == "greedy":
        return greedy(scenario, objective)
    if algo == "uniform":
        return uniform_best(scenario, objective)
    if algo == "window":
        return sliding_window(scenario, objective, W, budget)
    if algo == "dijkstra":
        return optimal(scenario, objective, budget)
    return brute_force(scenario, objective, budget)


def run_experiment(cfg: ExperimentConfig, schedules: list | None = None) -> list[ReportRow]:
    """One row per (algorithm, K, W), averaging ``cfg.trials`` seeded scenarios.

    When ``schedules`` is a list, every solved schedule is appended to it.
    """
    cfg.check()
    objective = Objective.parse(cfg.objective)
    budget = cfg.budget if cfg.budget is not None else default_budget()
    rows = []
    for K in cfg.K_values:
        scenarios = [make_scenario(cfg, K, t) for t in range(cfg.trials)]
        opts = [optimum(s, objective, budget) for s in scenarios]
        for algo in cfg.algorithms:
            specs = cfg.windows if algo == "window" else [None]
            for spec in specs:
                W = window_size(spec, cfg.N, K) if spec is not None else None
                ratios, times = [], []
                for t, (sc, opt) in enumerate(zip(scenarios, opts)):
                    res = _solve(cfg, algo, sc, objective, W, budget)
                    times.append(res.elapsed * 1000.0 if cfg.timing else 0.0)
                    if opt is not None:
                        ratios.append(ratio(res.objective_value, opt))
                    if schedules is not None:
                        schedules.append({"algorithm": algo, "K": K, "W": W, "trial": t, "schedule": list(res.schedule), "value": res.objective_value})
                mean_ratio = sum(ratios) / len(ratios) if len(ratios) == len(scenarios) else None
                rows.append(ReportRow(algo, K, cfg.N, W, mean_ratio, sum(times) / len(times), cfg.trials))
    return rows


def rows_to_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for r in rows:
        writer.writerow([
            r.algorithm, r.K, r.N, "" if r.W is None else r.W,
            "NA" if r.mean_ratio is None else repr(r.mean_ratio),
            repr(r.mean_runtime_ms), r.trials,
        ])
    return buf.getvalue()


def rows_to_json(rows: Sequence[ReportRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)
