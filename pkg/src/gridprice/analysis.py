"""Peak bounds for uniform pricing and Poisson extreme-value expectations."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import Scenario, ScenarioError

DEFAULT_EPS = 1e-12


@dataclass(frozen=True)
class PeakBounds:
    lower: float
    upper: float
    max_counts: tuple[int, ...]
    min_counts: tuple[int, ...]


def arrival_counts(scenario: Scenario) -> np.ndarray:
    """A[n-1, k-1] = number of jobs of deadline class n arriving at period k."""
    A = np.zeros((scenario.N, scenario.K), dtype=np.int64)
    for j in scenario.jobs:
        A[j.deadline_class - 1, j.arrival - 1] += 1
    return A


def lemma_bounds(scenario: Scenario) -> PeakBounds:
    """d * sum_n min_k A_n(k) <= optimal peak, uniform peak <= d * sum_n max_k A_n(k)."""
    demands = {j.demand for j in scenario.jobs}
    if len(demands) > 1:
        raise ScenarioError(["peak bounds need homogeneous demands"])
    d = demands.pop() if demands else 0.0
    A = arrival_counts(scenario)
    mx, mn = A.max(axis=1), A.min(axis=1)
    return PeakBounds(d * int(mn.sum()), d * int(mx.sum()), tuple(int(x) for x in mx), tuple(int(x) for x in mn))


def _poisson_tables(alpha: float):
    """pmf, cdf and survival (P[A > x]) on 0..x_hi, far enough out that the tail is negligible."""
    x_hi = int(alpha + 20 * math.sqrt(alpha) + 60)
    pmf = np.empty(x_hi + 1)
    if alpha <= 50:
        p = math.exp(-alpha)
        for i in range(x_hi + 1):
            pmf[i] = p
            p *= alpha / (i + 1)
    else:
        # exp(-alpha) underflows for large alpha; run the recurrence on logs
        lp, la = -alpha, math.log(alpha)
        for i in range(x_hi + 1):
            pmf[i] = math.exp(lp)
            lp += la - math.log(i + 1)
    cdf = np.cumsum(pmf)
    sf = np.cumsum(pmf[::-1])[::-1] - pmf  # sum over y > x, accurate in the tail
    return pmf, cdf, sf


def _check(alpha, K, eps):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")


def _sum_series(terms, sf, alpha, K, eps):
    # terms are nonincreasing in x; past the mode sf(x+1)/sf(x) <= r = alpha/(x+2) < 1,
    # so the remaining tail is at most K * sf(x) * r / (1 - r)
    total = 0.0
    for x, term in enumerate(terms):
        total += term
        if x > alpha and term < eps:
            r = alpha / (x + 2)
            if K * sf[x] * r / (1 - r) < eps:
                break
    return float(total)


def expected_max_poisson(alpha: float, K: int, eps: float = DEFAULT_EPS) -> float:
    """E[max of K iid Poisson(alpha)] = sum_{x>=0} [1 - F(x)^K]."""
    _check(alpha, K, eps)
    _, cdf, sf = _poisson_tables(alpha)
    logF = np.where(sf < 0.5, np.log1p(-np.minimum(sf, 0.5)), np.log(np.maximum(cdf, 1e-300)))
    terms = -np.expm1(K * logF)
    return _sum_series(terms, sf, alpha, K, eps)


def expected_min_poisson(alpha: float, K: int, eps: float = DEFAULT_EPS) -> float:
    """E[min of K iid Poisson(alpha)] = sum_{x>=1} P[A >= x]^K."""
    _check(alpha, K, eps)
    _, _, sf = _poisson_tables(alpha)
    # term for x + 1 is P[A > x]^K
    with np.errstate(divide="ignore"):
        terms = np.exp(K * np.log(sf))
    return _sum_series(terms, sf, alpha, K, eps)


@dataclass(frozen=True)
class RatioBound:
    value: float
    unbounded: bool
    per_class: tuple[tuple[float, float, float], ...] = field(default=())
    diagnostic: str = ""


def ratio_bound(alphas, K: int, eps: float = DEFAULT_EPS) -> RatioBound:
    """max_n E[A_max^n] / E[A_min^n]; unbounded when some E[A_min^n] is below eps."""
    rows = []
    worst = 0.0
    diag = []
    for a in alphas:
        emax, emin = expected_max_poisson(a, K, eps), expected_min_poisson(a, K, eps)
        if emin < eps:
            ratio = math.inf
            diag.append(f"E[A_min] = {emin:.3g} below eps {eps:g} for alpha={a}, K={K}")
        else:
            ratio = emax / emin
        rows.append((emax, emin, ratio))
        worst = max(worst, ratio)
    return RatioBound(worst, math.isinf(worst), tuple(rows), "; ".join(diag))
