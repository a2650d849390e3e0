"""Recover hom counts of every quotient of a pattern from its subgraph
counts alone, and show how large the oracle hosts get."""

from __future__ import annotations

import argparse

from dpc.basis import sub_basis
from dpc.classify import gen_host
from dpc.digraph import path, read_digraph
from dpc.homcount import brute_sub, count_hom
from dpc.interpolation import extract_homs


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pattern", help=".dg file (default: directed path on 3 vertices)")
    p.add_argument("--host-n", type=int, default=3)
    p.add_argument("--maxout", type=int, default=2)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()

    h = read_digraph(args.pattern) if args.pattern else path(3)
    g = gen_host(args.host_n, args.maxout, args.seed, loops=True)
    basis = sub_basis(h)
    sink: list = []
    result = extract_homs(g, basis, basis.evaluate, sink)
    for f, value in result:
        direct = count_hom(f, g)
        print(f"{sorted(f.arcs)!s:40s} coeff {basis.coefficient(f)!s:>6s} hom {value:6d} direct {direct:6d}")
    trace = sink[-1]
    degs = [d for _, d in trace.hosts.query_log]
    sizes = [n for n, _ in trace.hosts.query_log]
    print(f"queries: {len(degs)}  largest host: {max(sizes)} vertices  "
          f"max host outdegree: {max(degs)}  d(G'): {g.max_outdegree()}")
    print(f"direct subgraph count: {brute_sub(h, g)}  via basis: {basis.evaluate(g)}")


if __name__ == "__main__":
    main()
