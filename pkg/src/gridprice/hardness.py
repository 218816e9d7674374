"""Subset-Sum to MSE-minimization reduction, with an exact desk-scale verifier.

Quantities are kept in *doubled* integer units so that the half-integer
supplies a_k / 2 stay integral; objective values are returned as
``fractions.Fraction`` in natural units.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .heuristics import default_budget
from .model import BudgetExceeded

DEFAULT_VERIFY_BUDGET = 2**20


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class SubsetSumInstance:
    a: tuple[int, ...]
    B: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if not self.a:
            raise InstanceError("instance needs at least one integer")
        if any(not isinstance(x, int) or x <= 0 for x in self.a) or not isinstance(self.B, int) or self.B <= 0:
            raise InstanceError("all integers must be positive")
        if any(x < y for x, y in zip(self.a, self.a[1:])):
            raise InstanceError("integers must be sorted nonincreasing")

    @property
    def K(self) -> int:
        return len(self.a)

    @classmethod
    def from_dict(cls, d: dict) -> "SubsetSumInstance":
        try:
            return cls(tuple(int(x) for x in d["a"]), int(d["B"]))
        except (KeyError, TypeError) as e:
            raise InstanceError(f"malformed instance: {e!r}") from None


@dataclass(frozen=True)
class ReducedScenario:
    """K consumers over K+1 periods with per-consumer static thresholds.

    Consumer i arrives at period i with demand a_i, has threshold i, and must
    consume by period K+1.  ``demand2`` and ``supply2`` are doubled units.
    """

    K: int
    demand2: tuple[int, ...]
    thresholds: tuple[int, ...]
    supply2: tuple[int, ...]

    @property
    def periods(self) -> int:
        return self.K + 1

    @property
    def supply(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(s, 2) for s in self.supply2)

    def consumption2(self, prices) -> list[int]:
        """Doubled consumption per period for prices on periods 1..K.

        A consumer takes the first period whose price is at or below its
        threshold; anyone still waiting consumes at period K+1.
        """
        u = [0] * (self.K + 1)
        for i in range(1, self.K + 1):
            k = next((k for k in range(i, self.K + 1) if prices[k - 1] <= self.thresholds[i - 1]), self.K + 1)
            u[k - 1] += self.demand2[i - 1]
        return u

    def omega(self, prices) -> Fraction:
        u = self.consumption2(prices)
        return Fraction(sum((x - s) ** 2 for x, s in zip(u, self.supply2)), 4 * (self.K + 1))

    def to_dict(self) -> dict:
        return {
            "periods": self.periods,
            "consumers": [
                {"arrival": i, "departure": self.K + 1, "demand": d / 2, "threshold": t}
                for i, (d, t) in enumerate(zip(self.demand2, self.thresholds), start=1)
            ],
            "supply": [float(s) for s in self.supply],
        }


def reduce(instance: SubsetSumInstance) -> ReducedScenario:
    K = instance.K
    return ReducedScenario(
        K,
        tuple(2 * x for x in instance.a),
        tuple(range(1, K + 1)),
        tuple(instance.a) + (2 * instance.B,),
    )


def alpha_threshold(instance: SubsetSumInstance) -> Fraction:
    """(1 / (K+1)) * sum_k a_k^2 / 4."""
    return Fraction(sum(x * x for x in instance.a), 4 * (instance.K + 1))


def subset_omega(instance: SubsetSumInstance, consume_now) -> Fraction:
    """Objective when exactly the consumers in ``consume_now`` (1-based) consume at arrival."""
    deferred = sum(x for i, x in enumerate(instance.a, start=1) if i not in consume_now)
    num = sum(x * x for x in instance.a) + 4 * (deferred - instance.B) ** 2
    return Fraction(num, 4 * (instance.K + 1))


@dataclass(frozen=True)
class Verdict:
    is_yes: bool
    best_omega: Fraction
    alpha: Fraction
    witness: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {
            "is_yes": self.is_yes,
            "best_omega": str(self.best_omega),
            "alpha": str(self.alpha),
            "witness": list(self.witness) if self.witness is not None else None,
        }


def verify(instance: SubsetSumInstance, budget: int | None = None) -> Verdict:
    """Minimize the objective over all consume-at-arrival subsets.

    The witness is the lexicographically smallest optimal subset of consumers
    that consume on arrival (everyone else defers to the last period).
    """
    K = instance.K
    budget = default_budget(DEFAULT_VERIFY_BUDGET) if budget is None else budget
    if 2**K > budget:
        raise BudgetExceeded(f"subset enumeration needs 2**{K} > budget {budget}")
    best = None
    for r in range(K + 1):
        for V in itertools.combinations(range(1, K + 1), r):
            cand = (subset_omega(instance, set(V)), V)
            if best is None or cand < best:
                best = cand
    alpha = alpha_threshold(instance)
    omega, V = best
    is_yes = omega == alpha
    return Verdict(is_yes, omega, alpha, V if is_yes else None)


def price_enumeration_optimum(reduced: ReducedScenario, budget: int | None = None) -> Fraction:
    """Optimum over every price vector drawn from the levels 0.5, 1.5, ..., K + 0.5.

    Level j sits strictly between thresholds j and j + 1, so these K+1 levels
    realize every distinct response.  Period K+1 is deadline-forced.
    """
    K = reduced.K
    budget = default_budget(DEFAULT_VERIFY_BUDGET) if budget is None else budget
    if (K + 1) ** K > budget:
        raise BudgetExceeded(f"price enumeration needs {K + 1}**{K} > budget {budget}")
    best = None

    def dfs(k, pending, acc):
        nonlocal best
        if k > K:
            u = sum(d for _, d in pending)
            total = acc + (u - reduced.supply2[K]) ** 2
            if best is None or total < best:
                best = total
            return
        pending = pending + [(reduced.thresholds[k - 1], reduced.demand2[k - 1])]
        for level in range(K + 1):
            price = level + 0.5
            u = sum(d for t, d in pending if price <= t)
            rest = [(t, d) for t, d in pending if price > t]
            dfs(k + 1, rest, acc + (u - reduced.supply2[k - 1]) ** 2)

    dfs(1, [], 0)
    return Fraction(best, 4 * (K + 1))


def reduce_report(instance: SubsetSumInstance, budget: int | None = None) -> str:
    verdict = verify(instance, budget)
    return json.dumps(
        {"instance": {"a": list(instance.a), "B": instance.B}, "reduced": reduce(instance).to_dict(), **verdict.to_dict()},
        indent=2,
    )
