"""Wall-clock of the exact graph search against greedy as N grows (K fixed)."""
from __future__ import annotations

import argparse
import time

from gridprice.graph import graph_size, minimax_dijkstra, mse_dijkstra
from gridprice.heuristics import greedy
from gridprice.scenarios import Homogeneous, generate_scenario


def timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return (time.perf_counter() - t0) * 1000.0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--K", type=int, default=24)
    p.add_argument("--N", default="2,3,4,5,6")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    print("N,K,vertices,edges,peak_dijkstra_ms,mse_dijkstra_ms,greedy_ms")
    for N in (int(x) for x in args.N.split(",")):
        sc = generate_scenario(args.K, N, [args.alpha] * N, Homogeneous(1.0), args.seed, supply="flat")
        V, E = graph_size(N, args.K)
        tp = timed(lambda: minimax_dijkstra(sc))
        tm = timed(lambda: mse_dijkstra(sc))
        tg = timed(lambda: greedy(sc, "peak"))
        print(f"{N},{args.K},{V},{E},{tp:.2f},{tm:.2f},{tg:.3f}")


if __name__ == "__main__":
    main()
