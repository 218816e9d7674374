import json

import pytest

from gridprice.analysis import lemma_bounds
from gridprice.experiment import (
    ExperimentConfig,
    make_scenario,
    optimum,
    ratio,
    rows_to_csv,
    rows_to_json,
    run_experiment,
    window_size,
)
from gridprice.graph import minimax_dijkstra
from gridprice.heuristics import greedy, uniform_best
from gridprice.model import ScenarioError, evaluate


def small(**kw):
    base = dict(algorithms=["greedy", "uniform", "window"], K_values=[5, 8], N=3, windows=["N", "K"], trials=4, seed=3, timing=False)
    base.update(kw)
    return ExperimentConfig(**base)


def test_window_tokens():
    assert [window_size(t, 3, 50) for t in ("N", "2N", "N^2", "K", 4)] == [3, 6, 9, 50, 4]
    assert window_size("N^2", 3, 5) == 5
    with pytest.raises(ValueError):
        window_size("3N", 3, 10)
    with pytest.raises(ValueError):
        window_size(0, 3, 10)


def test_ratio_conventions():
    assert ratio(0.0, 0.0) == 1.0
    assert ratio(2.0, 0.0) == float("inf")
    assert ratio(3.0, 2.0) == 1.5


@pytest.mark.parametrize("objective", ["peak", "mse"])
def test_full_window_ratio_is_one(objective):
    rows = run_experiment(small(algorithms=["window"], windows=["K"], objective=objective))
    assert [r.mean_ratio for r in rows] == [1.0, 1.0]


@pytest.mark.parametrize("objective", ["peak", "mse"])
def test_ratios_at_least_one(objective):
    for r in run_experiment(small(objective=objective)):
        assert r.mean_ratio >= 1 - 1e-12
        assert r.mean_runtime_ms == 0.0


def test_greedy_and_uniform_within_bound_ratio():
    cfg = small(K_values=[12], trials=20, alphas=[2.0, 2.0, 2.0])
    for t in range(cfg.trials):
        sc = make_scenario(cfg, 12, t)
        b = lemma_bounds(sc)
        if b.lower == 0:
            continue
        opt = minimax_dijkstra(sc).objective_value
        for res in (greedy(sc, "peak"), uniform_best(sc, "peak")):
            assert res.objective_value / opt <= b.upper / b.lower


def test_reports_byte_identical():
    a, b = rows_to_csv(run_experiment(small())), rows_to_csv(run_experiment(small()))
    assert a == b
    assert a.splitlines()[0] == "algorithm,K,N,W,mean_ratio,mean_runtime_ms,trials"
    fields = json.loads(rows_to_json(run_experiment(small())))[0].keys()
    assert list(fields) == a.splitlines()[0].split(",")


def test_emitted_schedules_rederive_values():
    cfg = small(objective="mse", online=True)
    schedules = []
    run_experiment(cfg, schedules)
    assert len(schedules) == 2 * cfg.trials * 4
    for rec in schedules:
        sc = make_scenario(cfg, rec["K"], rec["trial"])
        assert evaluate(sc, rec["schedule"], "mse") == rec["value"]


def test_missing_optimum_marked_na():
    cfg = small(algorithms=["greedy"], K_values=[8], budget=10)
    rows = run_experiment(cfg)
    assert rows[0].mean_ratio is None
    assert rows_to_csv(rows).splitlines()[1].split(",")[4] == "NA"
    assert optimum(make_scenario(cfg, 8, 0), "peak", 10) is None


def test_config_validation():
    with pytest.raises(ScenarioError):
        ExperimentConfig.from_dict({"algorithms": ["magic"]})
    with pytest.raises(ScenarioError):
        ExperimentConfig.from_dict({"colour": "red"})
    with pytest.raises(ScenarioError):
        ExperimentConfig.from_dict({"N": 3, "alphas": [1.0]})
    assert ExperimentConfig.from_dict({"trials": 2}).trials == 2
