"""Wall time of count_sub against host size for a fixed pattern.

    python3 scripts/scaling.py --sizes 200 400 800 1600 --maxout 3
"""

from __future__ import annotations

import argparse
import math
import time

from dpc.basis import count_sub
from dpc.classify import gen_host
from dpc.digraph import out_star, read_digraph
from dpc.hypergraph import fractional_cover_number


def fit_exponent(sizes: list[int], times: list[float]) -> float:
    xs = [math.log(n) for n in sizes]
    ys = [math.log(t) for t in times]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pattern", help=".dg file (default: out-star with 3 leaves)")
    p.add_argument("--sizes", type=int, nargs="+", default=[200, 400, 800, 1600])
    p.add_argument("--maxout", type=int, default=3)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    h = read_digraph(args.pattern) if args.pattern else out_star(3)
    print(f"pattern n={h.n} m={h.m} rho*={fractional_cover_number(h)}")
    times = []
    for n in args.sizes:
        g = gen_host(n, args.maxout, args.seed + n)
        value = count_sub(h, g)
        best = math.inf
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            count_sub(h, g)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
        print(f"n={n:6d} m={g.m:6d} count={value:10d} time={best * 1000:9.2f} ms")
    if len(args.sizes) > 1:
        print(f"log-log slope: {fit_exponent(args.sizes, times):.3f}")


if __name__ == "__main__":
    main()
