import math

import pytest
from hypothesis import given, settings, strategies as st

from gridprice.model import ScenarioError, validate
from gridprice.scenarios import Empirical, Homogeneous, SplitMix64, generate_scenario, ingest_jobs_csv


def test_splitmix_reference_stream():
    # published SplitMix64 outputs for seed 1234567
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_uniform_range_and_integer_bounds():
    rng = SplitMix64(7)
    for _ in range(2000):
        assert 0.0 <= rng.uniform() < 1.0
        assert 3 <= rng.integer(3, 5) <= 5


def test_zero_rates_give_no_jobs():
    assert generate_scenario(20, 3, [0.0, 0.0, 0.0], seed=4).jobs == ()


def test_deterministic_json():
    a = generate_scenario(30, 3, [1.0, 2.0, 0.5], Empirical((0.5, 1.0, 2.5)), seed=77, supply="flat")
    b = generate_scenario(30, 3, [1.0, 2.0, 0.5], Empirical((0.5, 1.0, 2.5)), seed=77, supply="flat")
    assert a.to_json() == b.to_json()
    assert a.to_json() != generate_scenario(30, 3, [1.0, 2.0, 0.5], Empirical((0.5, 1.0, 2.5)), seed=78).to_json()


@pytest.mark.parametrize("seed", range(5))
def test_job_count_concentration(seed):
    sc = generate_scenario(100, 1, [4.0], seed=seed)
    assert abs(len(sc.jobs) - 400) <= 3 * math.sqrt(400)


def test_poisson_mean_and_variance():
    rng = SplitMix64(11)
    xs = [rng.poisson(3.0) for _ in range(50000)]
    mean = sum(xs) / len(xs)
    var = sum((x - mean) ** 2 for x in xs) / len(xs)
    assert abs(mean - 3.0) < 4 * math.sqrt(3.0 / len(xs))
    assert abs(var - 3.0) < 0.1


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 15), st.integers(1, 4), st.integers(0, 2**64 - 1))
def test_generated_scenarios_are_valid(K, N, seed):
    sc = generate_scenario(K, N, [1.5] * N, Homogeneous(2.0), seed=seed, supply="flat")
    assert validate(sc) == []
    assert sum(sc.supply) == pytest.approx(sc.total_demand)


def test_generate_rejects_bad_parameters():
    with pytest.raises(ScenarioError):
        generate_scenario(5, 2, [1.0], seed=0)
    with pytest.raises(ScenarioError):
        generate_scenario(5, 2, [1.0, -1.0], seed=0)
    with pytest.raises(ScenarioError):
        generate_scenario(5, 2, [1.0, 1.0], seed=0, supply="peaky")


def write(tmp_path, text):
    p = tmp_path / "jobs.csv"
    p.write_text(text)
    return p


def test_ingest_header_only(tmp_path):
    sc = ingest_jobs_csv(write(tmp_path, "job_id,arrival,demand\n"), N=3)
    assert sc.jobs == ()


@pytest.mark.parametrize("seed", range(10))
def test_ingest_single_row(tmp_path, seed):
    sc = ingest_jobs_csv(write(tmp_path, "job_id,arrival,demand\nwasher,1,5\n"), N=3, seed=seed, K=10)
    (job,) = sc.jobs
    assert job.id == "washer" and job.demand == 5.0
    assert job.deadline_class in {1, 2, 3}


def test_ingest_appliance_shape(tmp_path):
    lines = ["job_id,arrival,demand"] + [f"j{i},{1 + (i * 37) % 100},{1 + i % 4}" for i in range(64)]
    lines[1] = "j0,100,2"
    sc = ingest_jobs_csv(write(tmp_path, "\n".join(lines) + "\n"), N=3, seed=5)
    assert len(sc.jobs) == 64 and sc.K == 100
    assert validate(sc) == []


def test_ingest_reports_line_numbers(tmp_path):
    path = write(tmp_path, "job_id,arrival,demand\na,1,2\nb,x,1\nc,2,-3\nd,1\n")
    with pytest.raises(ScenarioError) as exc:
        ingest_jobs_csv(path, N=2)
    msgs = exc.value.errors
    assert any(m.startswith("line 3:") for m in msgs)
    assert any(m.startswith("line 4:") and "negative demand" in m for m in msgs)
    assert any(m.startswith("line 5:") for m in msgs)


def test_ingest_bad_header(tmp_path):
    with pytest.raises(ScenarioError, match="line 1"):
        ingest_jobs_csv(write(tmp_path, "id,t,d\n1,1,1\n"), N=2)
