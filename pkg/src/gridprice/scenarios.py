"""Seeded scenario generation and CSV ingestion.

Randomness comes from a SplitMix64 stream with fully specified derived draws
(uniform doubles from the top 53 bits, Poisson by CDF inversion, bounded
integers by scaling), so a scenario is reproducible bit-for-bit from its seed.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .model import Job, Scenario, ScenarioError, default_ladder

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def integer(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] by scaling one uniform draw."""
        return lo + min(int(self.uniform() * (hi - lo + 1)), hi - lo)

    def poisson(self, alpha: float) -> int:
        """Poisson(alpha) by sequential CDF inversion; one uniform per draw."""
        if alpha <= 0:
            self.uniform()
            return 0
        u = self.uniform()
        x, p = 0, math.exp(-alpha)
        F = p
        while u > F and p > 0:
            x += 1
            p *= alpha / x
            F += p
        return x


@dataclass(frozen=True)
class Homogeneous:
    d: float = 1.0

    def draw(self, rng: SplitMix64) -> float:
        return self.d


@dataclass(frozen=True)
class Empirical:
    values: tuple[float, ...]

    def draw(self, rng: SplitMix64) -> float:
        return self.values[rng.integer(0, len(self.values) - 1)]


def flat_supply(jobs: Sequence[Job], K: int) -> tuple[float, ...]:
    """Total demand spread evenly across the horizon."""
    total = sum(j.demand for j in jobs)
    return (total / K,) * K


def generate_scenario(
    K: int,
    N: int,
    alphas: Sequence[float],
    demand_model=Homogeneous(1.0),
    seed: int = 0,
    thresholds: Sequence[float] | None = None,
    supply: str | Sequence[float] | None = None,
) -> Scenario:
    """Poisson arrivals per (period, deadline class), drawn k-major then n.

    For each (k, n) the count is drawn first, then one demand per created job.
    A class whose deadline would pass K is reduced to K - k + 1 at creation.
    ``supply`` may be a vector, ``"flat"`` or None.
    """
    if K < 1 or N < 1:
        raise ScenarioError([f"K and N must be positive (got K={K}, N={N})"])
    if len(alphas) != N or any(not a >= 0 for a in alphas):
        raise ScenarioError([f"need N={N} non-negative arrival rates, got {list(alphas)}"])
    rng = SplitMix64(seed)
    jobs = []
    for k in range(1, K + 1):
        for n in range(1, N + 1):
            count = rng.poisson(alphas[n - 1])
            cls = min(n, K - k + 1)
            for _ in range(count):
                jobs.append(Job(len(jobs), k, cls, float(demand_model.draw(rng))))
    if isinstance(supply, str):
        if supply != "flat":
            raise ScenarioError([f"unknown supply model {supply!r}"])
        supply = flat_supply(jobs, K)
    return Scenario(K, N, tuple(thresholds) if thresholds else default_ladder(N), tuple(jobs), supply)


def ingest_jobs_csv(path, N: int, seed: int = 0, K: int | None = None, thresholds=None) -> Scenario:
    """Read ``job_id,arrival,demand`` rows and draw a feasible deadline class per job.

    Classes are uniform over [1, min(N, K - arrival + 1)] from the seeded stream,
    drawn in file order.  K defaults to the largest arrival.
    """
    rows, errors = [], []
    with open(Path(path), newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["job_id", "arrival", "demand"]:
            raise ScenarioError([f"line 1: expected header job_id,arrival,demand, got {header}"])
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                errors.append(f"line {lineno}: expected 3 fields, got {len(row)}")
                continue
            try:
                arrival, demand = int(row[1]), float(row[2])
            except ValueError:
                errors.append(f"line {lineno}: non-numeric arrival or demand {row[1:]!r}")
                continue
            if arrival < 1:
                errors.append(f"line {lineno}: arrival {arrival} must be >= 1")
            if not demand >= 0:
                errors.append(f"line {lineno}: negative demand {demand}")
            rows.append((row[0].strip(), arrival, demand, lineno))
    if K is None:
        K = max((r[1] for r in rows), default=1)
    for job_id, arrival, _, lineno in rows:
        if arrival > K:
            errors.append(f"line {lineno}: arrival {arrival} beyond horizon K={K}")
    if errors:
        raise ScenarioError(errors)
    rng = SplitMix64(seed)
    jobs = tuple(Job(job_id, arrival, rng.integer(1, min(N, K - arrival + 1)), demand) for job_id, arrival, demand, _ in rows)
    return Scenario(K, N, tuple(thresholds) if thresholds else default_ladder(N), jobs)
