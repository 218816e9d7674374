"""Dynamic pricing for consumers with time-to-go threshold policies."""
from .model import (
    BudgetExceeded,
    ConsumptionProfile,
    Job,
    Objective,
    Scenario,
    ScenarioError,
    consumption_at,
    evaluate,
    mse,
    peak,
    simulate,
    validate,
)
from .heuristics import SolveResult, brute_force, greedy, sliding_window, uniform_best
from .graph import build, graph_size, minimax_dijkstra, mse_dijkstra
from .analysis import expected_max_poisson, expected_min_poisson, lemma_bounds, ratio_bound
from .estimation import CausalView, estimate_rates, run_online
from .scenarios import generate_scenario, ingest_jobs_csv

__version__ = "0.1.0"
