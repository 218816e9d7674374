import pytest
from hypothesis import strategies as st

from gridprice.model import Job, Scenario, default_ladder
from gridprice.scenarios import Empirical, SplitMix64, generate_scenario

HALVES = (0.5, 1.0, 1.5, 2.0, 3.0)


@pytest.fixture
def k3():
    """K=3, N=2: j1 arrives at 1 with two periods of slack, j2 arrives at 2 with none."""
    return Scenario(3, 2, (10.0, 5.0), (Job("j1", 1, 2, 4.0), Job("j2", 2, 1, 2.0)))


@pytest.fixture
def k3_supply(k3):
    return k3.with_supply((4.0, 2.0, 0.0))


def small_corpus(count, seed=2024, max_K=8, max_N=3):
    """Seeded scenarios with K <= max_K, N <= max_N, half-integer demands and supplies.

    Dyadic values keep every objective exactly representable, so optima can be
    compared with ==.
    """
    rng = SplitMix64(seed)
    out = []
    for i in range(count):
        N = rng.integer(2, max_N)
        K = rng.integer(N, max_K)
        alphas = [0.25 + rng.uniform() for _ in range(N)]
        sc = generate_scenario(K, N, alphas, Empirical(HALVES), seed=rng.next_u64())
        supply = tuple(rng.integer(0, 8) / 2 for _ in range(K))
        out.append(sc.with_supply(supply))
    return out


@st.composite
def scenarios(draw, max_K=6, max_N=3, with_supply=True):
    K = draw(st.integers(1, max_K))
    N = draw(st.integers(1, max_N))
    n_jobs = draw(st.integers(0, 3 * K))
    jobs = []
    for i in range(n_jobs):
        a = draw(st.integers(1, K))
        n = draw(st.integers(1, min(N, K - a + 1)))
        d = draw(st.sampled_from((0.0,) + HALVES))
        jobs.append(Job(i, a, n, d))
    supply = None
    if with_supply:
        supply = tuple(draw(st.lists(st.sampled_from((0.0,) + HALVES), min_size=K, max_size=K)))
    return Scenario(K, N, default_ladder(N), tuple(jobs), supply)
