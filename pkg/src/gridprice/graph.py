"""Optimal pricing by search over the layered price graph.

A vertex in stage ``i`` is labeled with the indices of periods ``i .. i+N-2``;
labels are stored as base-N codes (digit ``index - 1``, earliest period most
significant), so numeric order of codes is lexicographic order of labels.
Adjacency is never materialized: the successors of a label are its last N-2
entries followed by each of the N indices.
"""
from __future__ import annotations

import heapq
import json
import time
from dataclasses import dataclass

import numpy as np

from .heuristics import SolveResult, brute_force, default_budget
from .model import BudgetExceeded, Objective, Scenario, ScenarioError, check, evaluate, period_table


def graph_size(N: int, K: int) -> tuple[int, int]:
    """(vertex count, edge count) of the layered graph for max deadline N, horizon K."""
    if N < 2 or K < N:
        raise ValueError(f"layered graph needs K >= N >= 2 (got N={N}, K={K})")
    return 2 + N ** (N - 1) * (K - N + 2), 2 * N ** (N - 1) + N**N * (K - N + 1)


def graph_stats_json(N: int, K: int) -> str:
    v, e = graph_size(N, K)
    return json.dumps({"N": N, "K": K, "vertices": v, "edges": e})


@dataclass
class LayeredPriceGraph:
    N: int
    K: int
    objective: Objective
    source_weights: np.ndarray  # per stage-1 label code
    stage_weights: list[np.ndarray]  # entry i-1: stage i -> i+1, indexed by code * N + (index - 1)

    @property
    def n_stages(self) -> int:
        return self.K - self.N + 2

    @property
    def labels_per_stage(self) -> int:
        return self.N ** (self.N - 1)

    @property
    def vertex_count(self) -> int:
        return 2 + self.labels_per_stage * self.n_stages

    @property
    def edge_count(self) -> int:
        return len(self.source_weights) + sum(len(w) for w in self.stage_weights) + self.labels_per_stage

    def successor(self, code: int, index: int) -> int:
        return (code % self.N ** (self.N - 2)) * self.N + index - 1

    def label(self, code: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.N - 1):
            code, r = divmod(code, self.N)
            digits.append(r + 1)
        return tuple(reversed(digits))

    def code(self, label) -> int:
        c = 0
        for t in label:
            c = c * self.N + t - 1
        return c

    def edges(self):
        """Yield every edge as (tail, head, weight); vertices are 's', 't' or (stage, label)."""
        M = self.labels_per_stage
        for c in range(M):
            yield "s", (1, self.label(c)), float(self.source_weights[c])
        for i, w in enumerate(self.stage_weights, start=1):
            for c in range(M):
                for t in range(1, self.N + 1):
                    yield (i, self.label(c)), (i + 1, self.label(self.successor(c, t))), float(w[c * self.N + t - 1])
        for c in range(M):
            yield (self.n_stages, self.label(c)), "t", 0.0

    def encode(self, schedule) -> list:
        """The unique source-destination path of a schedule."""
        N = self.N
        path = ["s"]
        path += [(i, tuple(schedule[i - 1 : i + N - 2])) for i in range(1, self.n_stages + 1)]
        return path + ["t"]

    def decode(self, path) -> tuple[int, ...]:
        """Stage-1 label followed by the newest index of each later label."""
        inner = path[1:-1]
        return tuple(inner[0][1]) + tuple(lab[-1] for _, lab in inner[1:])

    def path_value(self, schedule) -> float:
        """(Max- or sum-) aggregate of edge weights along the schedule's path."""
        codes = [self.code(lab) for _, lab in self.encode(schedule)[1:-1]]
        ws = [float(self.source_weights[codes[0]])]
        ws += [float(self.stage_weights[i][codes[i] * self.N + schedule[i + self.N - 1] - 1]) for i in range(len(codes) - 1)]
        return max(ws) if self.objective is Objective.PEAK else sum(ws)


def build(scenario: Scenario, objective: Objective | str, budget: int | None = None) -> LayeredPriceGraph:
    objective = Objective.parse(objective)
    check(scenario)
    K, N = scenario.K, scenario.N
    if N < 2 or K < N:
        raise ScenarioError([f"layered graph needs K >= N >= 2 (got N={N}, K={K})"])
    if objective is Objective.MSE and scenario.supply is None:
        raise ScenarioError(["MatchSupply objective requires a supply vector"])
    budget = default_budget() if budget is None else budget
    size = sum(graph_size(N, K))
    if size > budget:
        raise BudgetExceeded(f"graph has {size} vertices+edges > budget {budget}")
    groups, supply = scenario.groups, scenario.supply

    def contribution(table, k):
        if objective is Objective.PEAK:
            return table
        return (table - supply[k - 1]) ** 2

    head = (N,) * (N - 1)
    source = np.zeros(head)
    for k in range(1, N):
        part = contribution(period_table(groups, N, k), k)
        part = np.broadcast_to(part.reshape(part.shape + (1,) * (N - 1 - k)), head)
        source = np.maximum(source, part) if objective is Objective.PEAK else source + part
    stages = []
    for i in range(1, K - N + 2):
        p = i + N - 1
        stages.append(contribution(period_table(groups, N, p), p).reshape(-1))
    return LayeredPriceGraph(N, K, objective, source.reshape(-1), stages)


def _search(graph: LayeredPriceGraph):
    """Dijkstra from the source; returns (optimum, per-stage distances).

    PEAK relaxes with ``max(d(u), w)``, MSE with ``d(u) + w``.  Heap ties are
    broken by (stage, label code).  Popping continues through every key equal
    to the optimum so all vertices on optimal paths are final.
    """
    N, M = graph.N, graph.labels_per_stage
    shift = N ** (N - 2)
    S = graph.n_stages
    peak_obj = graph.objective is Objective.PEAK
    inf = float("inf")
    dist = [None] + [[inf] * M for _ in range(S)]
    done = [None] + [bytearray(M) for _ in range(S)]
    weights = [None] + [w.tolist() for w in graph.stage_weights]
    heap = []
    for c, w in enumerate(graph.source_weights.tolist()):
        dist[1][c] = w
        heap.append((w, 1, c))
    heapq.heapify(heap)
    best = inf
    while heap:
        key, i, c = heapq.heappop(heap)
        if key > best:
            break
        if done[i][c] or key > dist[i][c]:
            continue
        done[i][c] = 1
        if i == S:
            best = min(best, key)  # zero-weight edge to the destination
            continue
        w = weights[i]
        nxt, nd = dist[i + 1], done[i + 1]
        base = (c % shift) * N
        for p in range(N):
            v = base + p
            if nd[v]:
                continue
            cand = max(key, w[c * N + p]) if peak_obj else key + w[c * N + p]
            if cand < nxt[v]:
                nxt[v] = cand
                heapq.heappush(heap, (cand, i + 1, v))
    return best, dist


def _canonical_path(graph: LayeredPriceGraph, best: float, dist) -> tuple[int, ...]:
    """Lexicographically smallest schedule among the optimal paths."""
    N, M, S = graph.N, graph.labels_per_stage, graph.n_stages
    shift = N ** (N - 2)
    succ = (np.arange(M) % shift)[:, None] * N + np.arange(N)[None, :]
    peak_obj = graph.objective is Objective.PEAK
    d = [None] + [np.asarray(x) for x in dist[1:]]

    def usable(i):
        # M x N mask of edges out of stage i that can lie on an optimal path
        w = graph.stage_weights[i - 1].reshape(M, N)
        if peak_obj:
            return w <= best
        return d[i][:, None] + w == d[i + 1][succ]

    good = [None] * (S + 1)
    good[S] = np.ones(M, bool) if peak_obj else d[S] == best
    for i in range(S - 1, 0, -1):
        good[i] = (usable(i) & good[i + 1][succ]).any(axis=1)
    if peak_obj:
        first_ok = (graph.source_weights <= best) & good[1]
    else:
        first_ok = (graph.source_weights == d[1]) & good[1]
    c = int(np.flatnonzero(first_ok)[0])
    schedule = list(graph.label(c))
    for i in range(1, S):
        ok = usable(i)[c] & good[i + 1][succ[c]]
        p = int(np.flatnonzero(ok)[0])
        schedule.append(p + 1)
        c = int(succ[c, p])
    return tuple(schedule)


def _solve(scenario: Scenario, objective: Objective, budget: int | None) -> SolveResult:
    t0 = time.perf_counter()
    check(scenario)
    if scenario.N < 2 or scenario.K < scenario.N:
        res = brute_force(scenario, objective, budget)
        res.info["fallback"] = "brute_force"
        res.elapsed = time.perf_counter() - t0
        return res
    graph = build(scenario, objective, budget)
    best, dist = _search(graph)
    schedule = _canonical_path(graph, best, dist)
    value = evaluate(scenario, schedule, objective)
    path_value = best if objective is Objective.PEAK else best / scenario.K
    return SolveResult(schedule, value, time.perf_counter() - t0, {"path_value": path_value, "vertices": graph.vertex_count, "edges": graph.edge_count})


def minimax_dijkstra(scenario: Scenario, budget: int | None = None) -> SolveResult:
    """Minimum-peak schedule via minimax-path Dijkstra."""
    return _solve(scenario, Objective.PEAK, budget)


def mse_dijkstra(scenario: Scenario, budget: int | None = None) -> SolveResult:
    """Minimum-MSE schedule via shortest-path Dijkstra (path weight / K)."""
    return _solve(scenario, Objective.MSE, budget)


def optimal(scenario: Scenario, objective: Objective | str, budget: int | None = None) -> SolveResult:
    objective = Objective.parse(objective)
    return _solve(scenario, objective, budget)
