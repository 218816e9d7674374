"""E[A_max], E[A_min] and their ratio over a grid of arrival rates."""
from __future__ import annotations

import argparse

from gridprice.analysis import DEFAULT_EPS, ratio_bound


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--K", type=int, default=100)
    p.add_argument("--alphas", default="1,2,3,4,5,6,7,8,9,10,20,40,60,80")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    args = p.parse_args()
    print("alpha,E_max,E_min,ratio")
    for a in (float(x) for x in args.alphas.split(",")):
        rb = ratio_bound([a], args.K, args.eps)
        emax, emin, r = rb.per_class[0]
        print(f"{a:g},{emax:.10g},{emin:.10g},{'unbounded' if rb.unbounded else f'{r:.10g}'}")


if __name__ == "__main__":
    main()
