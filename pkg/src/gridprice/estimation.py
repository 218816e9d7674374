"""Online pricing when future arrivals are hidden.

At period k an algorithm sees only a :class:`CausalView` (jobs that have
already arrived).  Look-ahead windows fill future periods with expected load
from trailing-window rate estimates.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .heuristics import SolveResult, best_window, default_budget, greedy_schedule, uniform_best
from .model import Objective, Scenario, ScenarioError, check, evaluate

DEFAULT_HISTORY = 10
ALGORITHMS = ("greedy", "uniform", "sliding_window")


class CausalView:
    """Jobs with arrival <= k, plus the public problem data (K, N, ladder, supply)."""

    __slots__ = ("K", "N", "thresholds", "supply", "k", "_jobs")

    def __init__(self, scenario: Scenario, k: int):
        if not 1 <= k <= scenario.K:
            raise ValueError(f"period {k} outside [1, {scenario.K}]")
        self.K, self.N = scenario.K, scenario.N
        self.thresholds, self.supply = scenario.thresholds, scenario.supply
        self.k = k
        self._jobs = tuple(j for j in scenario.jobs if j.arrival <= k)

    @property
    def jobs(self):
        return self._jobs

    def scenario(self) -> Scenario:
        """The visible part as a scenario (hidden jobs simply absent)."""
        return Scenario(self.K, self.N, self.thresholds, self._jobs, self.supply)


@dataclass(frozen=True)
class RateEstimate:
    alpha_hat: tuple[float, ...]  # alpha_hat[n - 1]: arrivals per period with deadline class n
    mean_demand: float


def estimate_rates(view: CausalView, H: int = DEFAULT_HISTORY) -> RateEstimate:
    """Empirical means over the trailing window [max(1, k - H + 1), k]."""
    if H < 1:
        raise ValueError("history length H must be >= 1")
    start = max(1, view.k - H + 1)
    length = view.k - start + 1
    counts = [0] * view.N
    demands = []
    for j in view.jobs:
        if j.arrival >= start:
            counts[j.deadline_class - 1] += 1
            demands.append(j.demand)
    mean_demand = sum(demands) / len(demands) if demands else 0.0
    return RateEstimate(tuple(c / length for c in counts), mean_demand)


def _window_groups(view: CausalView, est: RateEstimate, last: int) -> dict[int, dict[int, float]]:
    """Realized demand up to k, fractional expected demand on (k, last]."""
    groups: dict[int, dict[int, float]] = {}
    for j in view.jobs:
        g = groups.setdefault(j.arrival, {})
        g[j.deadline_class] = g.get(j.deadline_class, 0.0) + j.demand
    for kk in range(view.k + 1, last + 1):
        g = groups.setdefault(kk, {})
        for n, rate in enumerate(est.alpha_hat, start=1):
            load = rate * est.mean_demand
            if load > 0:
                cls = min(n, view.K - kk + 1)
                g[cls] = g.get(cls, 0.0) + load
    return groups


def run_online(
    scenario: Scenario,
    algorithm: str,
    objective: Objective | str,
    W: int = 1,
    H: int = DEFAULT_HISTORY,
    uniform_index: int | None = None,
    budget: int | None = None,
) -> SolveResult:
    """Post one price per period using only the causal view at that period.

    ``uniform`` posts a single index fixed before period 1: ``uniform_index``
    when given, otherwise the best constant for the realized scenario (the
    index is chosen with hindsight, the prices are then posted period by period).
    """
    t0 = time.perf_counter()
    objective = Objective.parse(objective)
    check(scenario)
    if algorithm not in ALGORITHMS:
        raise ScenarioError([f"unknown online algorithm {algorithm!r}; expected one of {ALGORITHMS}"])
    if objective is Objective.MSE and scenario.supply is None:
        raise ScenarioError(["MatchSupply objective requires a supply vector"])
    K, N = scenario.K, scenario.N
    info = {"online": True, "algorithm": algorithm}
    committed: list[int] = []
    if algorithm == "uniform":
        t = uniform_index if uniform_index is not None else uniform_best(scenario, objective).info["uniform_index"]
        if not 1 <= t <= N:
            raise ScenarioError([f"uniform index {t} outside [1, {N}]"])
        committed = [t] * K
        info["uniform_index"] = t
    elif algorithm == "greedy":
        for k in range(1, K + 1):
            view = CausalView(scenario, k)
            committed.append(greedy_schedule(view.scenario(), objective, horizon=k)[-1])
    else:
        if W < 1:
            raise ScenarioError([f"window size W={W} must be >= 1"])
        budget = default_budget() if budget is None else budget
        info.update(W=W, H=H)
        for k in range(1, K + 1):
            view = CausalView(scenario, k)
            last = min(k + W - 1, K)
            groups = _window_groups(view, estimate_rates(view, H), last)
            seq, _ = best_window(groups, N, scenario.supply, objective, committed, k, last, budget)
            committed.append(seq[0])
    value = evaluate(scenario, committed, objective)
    return SolveResult(tuple(committed), value, time.perf_counter() - t0, info)
