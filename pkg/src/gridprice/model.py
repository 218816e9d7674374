"""Consumers with time-to-go thresholds and their aggregate response to prices.

Prices are carried as threshold *indices*: index ``t`` at period ``k`` means the
posted price is ``thresholds[t - 1]``.  A pending job whose time-to-go at ``k`` is
``tt`` consumes its whole demand at the first period where ``index >= tt``.
Periods and indices are 1-based throughout, matching the usual notation.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class ScenarioError(ValueError):
    """Raised when a scenario or schedule violates its invariants."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


class Objective(enum.Enum):
    PEAK = "peak"
    MSE = "mse"

    @classmethod
    def parse(cls, value: "Objective | str") -> "Objective":
        if isinstance(value, cls):
            return value
        aliases = {"peak": cls.PEAK, "peakmin": cls.PEAK, "mse": cls.MSE, "matchsupply": cls.MSE, "match": cls.MSE}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown objective {value!r}") from None


@dataclass(frozen=True)
class Job:
    id: int | str
    arrival: int
    deadline_class: int
    demand: float

    @property
    def deadline(self) -> int:
        """Last period in which the job may consume."""
        return self.arrival + self.deadline_class - 1


@dataclass(frozen=True)
class Scenario:
    K: int
    N: int
    thresholds: tuple[float, ...]
    jobs: tuple[Job, ...] = ()
    supply: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "thresholds", tuple(float(x) for x in self.thresholds))
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if self.supply is not None:
            object.__setattr__(self, "supply", tuple(float(x) for x in self.supply))

    @cached_property
    def groups(self) -> dict[int, dict[int, float]]:
        """arrival -> deadline class -> summed demand."""
        out: dict[int, dict[int, float]] = {}
        for j in self.jobs:
            by_class = out.setdefault(j.arrival, {})
            by_class[j.deadline_class] = by_class.get(j.deadline_class, 0.0) + j.demand
        return out

    @property
    def total_demand(self) -> float:
        return sum(j.demand for j in self.jobs)

    def with_supply(self, supply: Iterable[float] | None) -> "Scenario":
        return Scenario(self.K, self.N, self.thresholds, self.jobs, None if supply is None else tuple(supply))

    # JSON wire format: {"K", "N", "thresholds", "jobs": [{"arrival","deadline","demand"}], "supply"?}
    def to_dict(self) -> dict:
        d = {
            "K": self.K,
            "N": self.N,
            "thresholds": list(self.thresholds),
            "jobs": [{"arrival": j.arrival, "deadline": j.deadline_class, "demand": j.demand} for j in self.jobs],
        }
        if self.supply is not None:
            d["supply"] = list(self.supply)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        try:
            jobs = tuple(
                Job(jd.get("id", i), int(jd["arrival"]), int(jd["deadline"]), float(jd["demand"]))
                for i, jd in enumerate(d["jobs"])
            )
            return cls(int(d["K"]), int(d["N"]), tuple(d["thresholds"]), jobs, d.get("supply"))
        except (KeyError, TypeError, ValueError) as e:
            raise ScenarioError([f"malformed scenario JSON: {e!r}"]) from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        return cls.from_dict(json.loads(text))


def default_ladder(N: int) -> tuple[float, ...]:
    """Strictly decreasing thresholds N, N-1, ..., 1."""
    return tuple(float(N - t) for t in range(N))


@dataclass(frozen=True)
class ConsumptionProfile:
    u: tuple[float, ...]
    consumed_at: dict = field(default_factory=dict)


def validate(scenario: Scenario) -> list[str]:
    """Return every invariant violation; an empty list means the scenario is valid."""
    errors = []
    K, N = scenario.K, scenario.N
    if not isinstance(K, int) or K < 1:
        errors.append(f"horizon K must be a positive integer, got {K!r}")
    if not isinstance(N, int) or N < 1:
        errors.append(f"max deadline N must be a positive integer, got {N!r}")
    tau = scenario.thresholds
    if len(tau) != N:
        errors.append(f"threshold ladder has length {len(tau)}, expected N={N}")
    if any(a <= b for a, b in zip(tau, tau[1:])):
        errors.append("threshold ladder not strictly decreasing")
    if tau and tau[-1] <= 0:
        errors.append("thresholds must be positive")
    seen = set()
    for j in scenario.jobs:
        if j.id in seen:
            errors.append(f"job {j.id}: duplicate id")
        seen.add(j.id)
        if not 1 <= j.arrival <= K:
            errors.append(f"job {j.id}: arrival {j.arrival} outside [1, {K}]")
        if not 1 <= j.deadline_class <= N:
            errors.append(f"job {j.id}: deadline class {j.deadline_class} outside [1, {N}]")
        elif j.deadline > K:
            errors.append(f"job {j.id}: deadline beyond horizon ({j.deadline} > {K})")
        if not j.demand >= 0:
            errors.append(f"job {j.id}: negative demand {j.demand}")
    if scenario.supply is not None:
        if len(scenario.supply) != K:
            errors.append(f"supply has length {len(scenario.supply)}, expected K={K}")
        if any(not s >= 0 for s in scenario.supply):
            errors.append("supply entries must be non-negative")
    return errors


def check(scenario: Scenario) -> None:
    errors = validate(scenario)
    if errors:
        raise ScenarioError(errors)


def check_schedule(scenario: Scenario, schedule: Sequence[int]) -> tuple[int, ...]:
    schedule = tuple(int(t) for t in schedule)
    if len(schedule) != scenario.K:
        raise ScenarioError([f"schedule length {len(schedule)} != K={scenario.K}"])
    bad = [t for t in schedule if not 1 <= t <= scenario.N]
    if bad:
        raise ScenarioError([f"schedule indices must lie in [1, {scenario.N}], got {bad[0]}"])
    return schedule


def consumption_period(job: Job, schedule: Sequence[int]) -> int:
    """First period where the job accepts the posted price."""
    for k in range(job.arrival, job.deadline + 1):
        if schedule[k - 1] >= job.deadline - k + 1:
            return k
    # index >= 1 always satisfies time-to-go 1, so the loop returns by the deadline
    raise AssertionError("unreachable for valid indices")


def simulate(scenario: Scenario, schedule: Sequence[int]) -> ConsumptionProfile:
    check(scenario)
    schedule = check_schedule(scenario, schedule)
    u = [0.0] * scenario.K
    consumed_at = {}
    for j in scenario.jobs:
        k = consumption_period(j, schedule)
        u[k - 1] += j.demand
        consumed_at[j.id] = k
    return ConsumptionProfile(tuple(u), consumed_at)


def consumption_at(scenario: Scenario, window_indices: Sequence[int], period: int) -> float:
    """u(period) from the prices of periods [max(1, period - N + 1), period] alone."""
    if not 1 <= period <= scenario.K:
        raise ScenarioError([f"period {period} outside [1, {scenario.K}]"])
    start = max(1, period - scenario.N + 1)
    if len(window_indices) != period - start + 1:
        raise ScenarioError([f"window covers {len(window_indices)} periods, expected {period - start + 1}"])
    total = 0.0
    for j in scenario.jobs:
        if start <= j.arrival <= period <= j.deadline:
            for k in range(j.arrival, period + 1):
                if window_indices[k - start] >= j.deadline - k + 1:
                    if k == period:
                        total += j.demand
                    break
    return total


def peak(profile: ConsumptionProfile | Sequence[float]) -> float:
    u = profile.u if isinstance(profile, ConsumptionProfile) else profile
    return max(u) if len(u) else 0.0


def sse(u: Sequence[float], supply: Sequence[float]) -> float:
    return sum((a - b) ** 2 for a, b in zip(u, supply))


def mse(profile: ConsumptionProfile | Sequence[float], supply: Sequence[float] | None) -> float:
    u = profile.u if isinstance(profile, ConsumptionProfile) else profile
    if supply is None:
        raise ScenarioError(["mse requires a supply vector"])
    if len(supply) != len(u):
        raise ScenarioError([f"supply length {len(supply)} != {len(u)}"])
    return sse(u, supply) / len(u)


def evaluate(scenario: Scenario, schedule: Sequence[int], objective: Objective | str) -> float:
    """Objective value of ``schedule`` by full re-simulation."""
    objective = Objective.parse(objective)
    profile = simulate(scenario, schedule)
    if objective is Objective.PEAK:
        return peak(profile)
    return mse(profile, scenario.supply)


def period_table(groups: dict[int, dict[int, float]], N: int, period: int) -> np.ndarray:
    """u(period) for every index assignment on the trailing window ending at ``period``.

    Returns an array with one axis per period in ``[max(1, period - N + 1), period]``
    (earliest first); axis entry ``i`` stands for index ``i + 1``.
    """
    start = max(1, period - N + 1)
    L = period - start + 1
    table = np.zeros((N,) * L)
    axes = []
    for j in range(L):
        shape = [1] * L
        shape[j] = N
        axes.append(np.arange(1, N + 1).reshape(shape))
    for a in range(start, period + 1):
        for n, demand in groups.get(a, {}).items():
            deadline = a + n - 1
            if deadline < period or demand == 0:
                continue
            mask = axes[period - start] >= deadline - period + 1
            for k in range(a, period):
                mask = mask & (axes[k - start] < deadline - k + 1)
            table = table + demand * np.broadcast_to(mask, table.shape)
    return table
