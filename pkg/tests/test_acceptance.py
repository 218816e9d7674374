"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line."""
import random
import time

import pytest

from conftest import small_corpus
from gridprice.analysis import expected_max_poisson, expected_min_poisson, lemma_bounds
from gridprice.estimation import run_online
from gridprice.experiment import ExperimentConfig, run_experiment
from gridprice.graph import graph_size, minimax_dijkstra, mse_dijkstra
from gridprice.hardness import SubsetSumInstance, price_enumeration_optimum, reduce, verify
from gridprice.heuristics import brute_force, greedy, sliding_window, uniform_best
from gridprice.model import Job, Scenario
from gridprice.scenarios import Homogeneous, generate_scenario
from test_estimation import mutate_future
from test_hardness import subset_sum_dp


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        return ok

    return emit


@pytest.fixture(scope="module")
def corpus():
    return small_corpus(240, seed=2024)


def test_1_graph_size_table(report):
    t0 = time.perf_counter()
    got = graph_size(3, 24), graph_size(6, 24)
    ms = (time.perf_counter() - t0) * 1000
    ok = got == ((209, 612), (155522, 902016)) and ms < 1
    assert report(1, ok, f"sizes {got}, {ms:.3f} ms")


def test_2_oracle_equivalence(report, corpus):
    t0 = time.perf_counter()
    mismatches = 0
    for sc in corpus:
        mismatches += minimax_dijkstra(sc).objective_value != brute_force(sc, "peak").objective_value
        mismatches += mse_dijkstra(sc).objective_value != brute_force(sc, "mse").objective_value
    secs = time.perf_counter() - t0
    ok = len(corpus) >= 200 and mismatches == 0 and secs < 30
    assert report(2, ok, f"{len(corpus)} scenarios, {mismatches} mismatches, {secs:.1f} s")


def test_3_heuristic_hierarchy(report, corpus):
    failures = []
    for i, sc in enumerate(corpus):
        for obj in ("peak", "mse"):
            opt = brute_force(sc, obj).objective_value
            if sliding_window(sc, obj, sc.K).objective_value != opt:
                failures.append((i, obj, "W=K"))
            if sliding_window(sc, obj, 1).objective_value != greedy(sc, obj).objective_value:
                failures.append((i, obj, "W=1"))
            values = [greedy(sc, obj), uniform_best(sc, obj)] + [sliding_window(sc, obj, W) for W in range(1, sc.K + 1)]
            if any(r.objective_value < opt for r in values):
                failures.append((i, obj, "ratio<1"))
    assert report(3, not failures, f"{len(corpus)} scenarios, failures {failures[:3]}")


def test_4_bounds_sandwich(report):
    bad = []
    for seed in range(100):
        sc = generate_scenario(24, 3, [2.0, 2.0, 2.0], Homogeneous(1.0), seed=seed)
        b = lemma_bounds(sc)
        opt = minimax_dijkstra(sc).objective_value
        uni = uniform_best(sc, "peak").objective_value
        if not b.lower <= opt <= uni <= b.upper:
            bad.append((seed, b.lower, opt, uni, b.upper))
    assert report(4, not bad, f"100 scenarios, violations {bad[:3]}")


def test_5_ratio_grid(report):
    t0 = time.perf_counter()
    ratios = []
    for a in range(1, 11):
        emin = expected_min_poisson(float(a), 100, 1e-12)
        ratios.append(expected_max_poisson(float(a), 100, 1e-12) / emin if emin >= 1e-12 else float("inf"))
    secs = time.perf_counter() - t0
    below_two = all(r < 2 for r in ratios)
    decreasing = all(b < a + 1e-9 and not (a == b == float("inf")) for a, b in zip(ratios, ratios[1:]))
    shown = ", ".join(f"{r:.4g}" for r in ratios)
    ok = below_two and decreasing and secs < 5
    assert report(5, ok, f"K=100 ratios [{shown}]; <2: {below_two}; decreasing: {decreasing}; {secs:.2f} s")


def test_6_series_single_period(report):
    errs = [abs(f(a, 1) - a) for a in (0.5, 2.0, 10.0) for f in (expected_max_poisson, expected_min_poisson)]
    assert report(6, max(errs) <= 1e-9, f"max error {max(errs):.2e}")


def test_7_hardness(report):
    rng = random.Random(7)
    t0 = time.perf_counter()
    bad, crosschecked = [], 0
    for i in range(50):
        K = rng.randint(1, 12)
        a = sorted((rng.randint(1, 15) for _ in range(K)), reverse=True)
        inst = SubsetSumInstance(tuple(a), rng.randint(1, sum(a)))
        v = verify(inst)
        if v.is_yes != subset_sum_dp(inst.a, inst.B):
            bad.append((i, "verdict"))
        if not ((v.best_omega == v.alpha) if v.is_yes else (v.best_omega > v.alpha)):
            bad.append((i, "omega"))
        if K <= 6:
            crosschecked += 1
            if price_enumeration_optimum(reduce(inst)) != v.best_omega:
                bad.append((i, "price enumeration"))
    secs = time.perf_counter() - t0
    ok = not bad and secs < 60
    assert report(7, ok, f"50 instances, {crosschecked} cross-checked, failures {bad[:3]}, {secs:.1f} s")


@pytest.mark.slow
def test_8_window_trend(report):
    details, ok = [], True
    for obj in ("peak", "mse"):
        cfg = ExperimentConfig(
            algorithms=["window"], objective=obj, K_values=list(range(10, 51)), N=3,
            windows=["N", "2N", "N^2"], trials=30, seed=0, demand=1.0, timing=False,
        )
        per_k = {}
        for r in run_experiment(cfg):
            per_k.setdefault(r.K, {})[r.W] = r.mean_ratio
        monotone = all(d[3] >= d[6] >= d[9] for d in per_k.values())
        agg = {W: sum(d[W] for d in per_k.values()) / len(per_k) for W in (3, 6, 9)}
        worst9 = max(d[9] for d in per_k.values())
        ok &= monotone and worst9 <= 1.10
        details.append(f"{obj}: mean ratio W=3 {agg[3]:.4f}, W=6 {agg[6]:.4f}, W=9 {agg[9]:.4f}, worst W=9 {worst9:.4f}, monotone per K {monotone}")
    assert report(8, ok, "; ".join(details))


def test_9_online_causality(report):
    rng = random.Random(9)
    corpus = small_corpus(100, seed=99, max_K=10)
    broken = 0
    for i in range(100):
        sc = corpus[i]
        k = rng.randint(1, sc.K)
        algo, W = rng.choice([("greedy", 1), ("sliding_window", 2), ("sliding_window", 3), ("sliding_window", 5)])
        obj = rng.choice(["peak", "mse"])
        base = run_online(sc, algo, obj, W=W, H=3).schedule
        other = run_online(mutate_future(sc, k, rng), algo, obj, W=W, H=3).schedule
        broken += base[:k] != other[:k]
    assert report(9, broken == 0, f"100 mutations, {broken} prefix changes")


def _best_time(fn, reps=3):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_10_runtime_trend(report):
    scs = {N: generate_scenario(24, N, [1.0] * N, Homogeneous(1.0), seed=N) for N in (3, 6)}
    t3 = _best_time(lambda: minimax_dijkstra(scs[3]))
    t6 = _best_time(lambda: minimax_dijkstra(scs[6]), reps=1)
    tg = max(_best_time(lambda: greedy(sc, "peak")) for sc in scs.values())
    ok = t6 / t3 > 6 / 3 and tg < 0.010
    assert report(10, ok, f"dijkstra N=3 {t3 * 1000:.1f} ms, N=6 {t6 * 1000:.1f} ms, greedy max {tg * 1000:.2f} ms")
