"""Pricing heuristics (greedy, sliding window, uniform) and the exhaustive oracle.

Every search here breaks ties toward the *highest* price, i.e. the
lexicographically smallest index sequence.  Sharing one rule is what makes
``sliding_window(W=1)`` coincide with ``greedy`` schedule-for-schedule.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .model import (
    BudgetExceeded,
    Objective,
    Scenario,
    ScenarioError,
    check,
    evaluate,
    period_table,
)

DEFAULT_BUDGET = 10**7


def default_budget(fallback: int = DEFAULT_BUDGET) -> int:
    """Enumeration budget, overridable through ``GRIDPRICE_BUDGET``."""
    env = os.environ.get("GRIDPRICE_BUDGET")
    return int(float(env)) if env else fallback


@dataclass
class SolveResult:
    schedule: tuple[int, ...]
    objective_value: float
    elapsed: float = 0.0
    info: dict = field(default_factory=dict)


def _require_supply(scenario: Scenario, objective: Objective) -> None:
    if objective is Objective.MSE and scenario.supply is None:
        raise ScenarioError(["MatchSupply objective requires a supply vector"])


def _finish(scenario, schedule, objective, t0, **info) -> SolveResult:
    schedule = tuple(int(t) for t in schedule)
    value = evaluate(scenario, schedule, objective)
    return SolveResult(schedule, value, time.perf_counter() - t0, info)


def greedy_schedule(scenario: Scenario, objective: Objective, horizon: int | None = None) -> list[int]:
    """Greedy prices for periods 1..horizon; reads no job arriving after the period being priced."""
    K = scenario.K if horizon is None else horizon
    arrivals: dict[int, list] = {}
    for j in scenario.jobs:
        arrivals.setdefault(j.arrival, []).append((j.deadline, j.demand))
    pending: list[tuple[int, float]] = []
    schedule = []
    for k in range(1, K + 1):
        pending.extend(arrivals.get(k, ()))
        # demand by time-to-go at k
        by_ttg = [0.0] * (scenario.N + 1)
        for deadline, demand in pending:
            by_ttg[deadline - k + 1] += demand
        best_t, best_val, u = 1, None, 0.0
        for t in range(1, scenario.N + 1):
            u += by_ttg[t]
            val = u if objective is Objective.PEAK else (u - scenario.supply[k - 1]) ** 2
            if best_val is None or val < best_val:
                best_t, best_val = t, val
        schedule.append(best_t)
        pending = [(d, x) for d, x in pending if d - k + 1 > best_t]
    return schedule


def greedy(scenario: Scenario, objective: Objective | str) -> SolveResult:
    t0 = time.perf_counter()
    objective = Objective.parse(objective)
    check(scenario)
    _require_supply(scenario, objective)
    return _finish(scenario, greedy_schedule(scenario, objective), objective, t0)


def _sequences(N: int, W: int) -> np.ndarray:
    """All N**W index sequences (1-based) in lexicographic order, one per row."""
    return np.indices((N,) * W, dtype=np.int16).reshape(W, -1).T + 1


def best_window(
    groups: dict[int, dict[int, float]],
    N: int,
    supply: Sequence[float] | None,
    objective: Objective,
    committed: Sequence[int],
    first: int,
    last: int,
    budget: int | None = None,
    tables: dict | None = None,
) -> tuple[tuple[int, ...], float]:
    """Brute-force the index sequence for periods [first, last].

    ``committed[k - 1]`` is the frozen index of every period ``k < first``.  The
    local objective is the max (PEAK) or summed squared error (MSE) of u over the
    window.  Returns the lexicographically smallest minimizer and its value.
    """
    W = last - first + 1
    budget = default_budget() if budget is None else budget
    if N**W > budget:
        raise BudgetExceeded(f"window enumeration needs {N}**{W} = {N**W} > budget {budget}")
    seqs = _sequences(N, W)
    agg = np.zeros(len(seqs))
    for p in range(first, last + 1):
        table = tables.get(p) if tables is not None else None
        if table is None:
            table = period_table(groups, N, p)
            if tables is not None:
                tables[p] = table
        start = max(1, p - N + 1)
        if start < first:
            table = table[tuple(committed[k - 1] - 1 for k in range(start, first))]
        lo = max(start, first)
        u = table[tuple(seqs[:, k - first] - 1 for k in range(lo, p + 1))]
        if objective is Objective.PEAK:
            np.maximum(agg, u, out=agg)
        else:
            agg += (u - supply[p - 1]) ** 2
    i = int(np.argmin(agg))
    return tuple(int(x) for x in seqs[i]), float(agg[i])


def sliding_window(scenario: Scenario, objective: Objective | str, W: int, budget: int | None = None) -> SolveResult:
    """Slide a width-W brute-force window over the horizon, overwriting as it goes.

    Each window rewrites all of [first, last]; positions before ``first`` stay
    frozen, so the tail of the schedule comes from the final window.
    """
    t0 = time.perf_counter()
    objective = Objective.parse(objective)
    check(scenario)
    _require_supply(scenario, objective)
    K, N = scenario.K, scenario.N
    if not 1 <= W <= K:
        raise ScenarioError([f"window size W={W} outside [1, {K}]"])
    schedule = [1] * K
    tables: dict = {}
    for first in range(1, K - W + 2):
        last = first + W - 1
        seq, _ = best_window(scenario.groups, N, scenario.supply, objective, schedule, first, last, budget, tables)
        schedule[first - 1 : last] = seq
    return _finish(scenario, schedule, objective, t0, W=W)


def uniform_best(scenario: Scenario, objective: Objective | str) -> SolveResult:
    """Best constant schedule (t, t, ..., t); ties go to the smallest t."""
    t0 = time.perf_counter()
    objective = Objective.parse(objective)
    check(scenario)
    _require_supply(scenario, objective)
    best = None
    for t in range(1, scenario.N + 1):
        value = evaluate(scenario, (t,) * scenario.K, objective)
        if best is None or value < best[1]:
            best = (t, value)
    t = best[0]
    return _finish(scenario, (t,) * scenario.K, objective, t0, uniform_index=t)


def brute_force(scenario: Scenario, objective: Objective | str, budget: int | None = None) -> SolveResult:
    """Exact optimum by depth-first enumeration of all N**K schedules.

    Works on individual jobs rather than the vectorized period tables, so it is
    an independent check on ``sliding_window`` and the graph search.
    """
    t0 = time.perf_counter()
    objective = Objective.parse(objective)
    check(scenario)
    _require_supply(scenario, objective)
    K, N = scenario.K, scenario.N
    budget = default_budget() if budget is None else budget
    if N**K > budget:
        raise BudgetExceeded(f"brute force needs {N}**{K} = {N**K} schedules > budget {budget}")
    arrivals: dict[int, list] = {}
    for j in scenario.jobs:
        arrivals.setdefault(j.arrival, []).append((j.deadline, j.demand))
    supply = scenario.supply
    peak_obj = objective is Objective.PEAK
    best_value = float("inf")
    best_schedule: list[int] = []
    prefix: list[int] = []

    def dfs(k: int, pending: list, acc: float) -> None:
        nonlocal best_value, best_schedule
        if k > K:
            if acc < best_value:
                best_value, best_schedule = acc, list(prefix)
            return
        pending = pending + arrivals.get(k, [])
        for t in range(1, N + 1):
            u = 0.0
            rest = []
            for item in pending:
                if item[0] - k + 1 <= t:
                    u += item[1]
                else:
                    rest.append(item)
            nxt = max(acc, u) if peak_obj else acc + (u - supply[k - 1]) ** 2
            prefix.append(t)
            dfs(k + 1, rest, nxt)
            prefix.pop()

    dfs(1, [], 0.0)
    return _finish(scenario, best_schedule, objective, t0, enumerated=N**K)
