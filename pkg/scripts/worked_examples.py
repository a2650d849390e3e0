"""Invariant table for the standard example families: disjoint cyclic and
transitive triangles, the U/D subset construction and split cliques."""

from __future__ import annotations

import argparse
import itertools

from dpc.digraph import Digraph, UGraph, cycle, directed_split, disjoint_union, transitive_tournament
from dpc.hypergraph import fractional_cover_number, invariant_report, source_number


def subset_construction(k: int) -> Digraph:
    subsets = list(itertools.combinations(range(2 * k), k))
    arcs = {(i, 2 * k + j) for j, a in enumerate(subsets) for i in a}
    return Digraph(2 * k + len(subsets), frozenset(arcs))


def families(kmax: int):
    for k in range(1, kmax + 1):
        yield f"cyclic triangles x{k}", disjoint_union(*[cycle(3)] * k)
        yield f"transitive triangles x{k}", disjoint_union(*[transitive_tournament(3)] * k)
    for k in (2, 3):
        yield f"subset construction k={k}", subset_construction(k)
    for k in (3, 4, 5):
        yield f"split K{k}", directed_split(UGraph.complete(k))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--kmax", type=int, default=5)
    args = p.parse_args()
    print(f"{'pattern':28s} {'n':>3s} {'rho*':>6s} {'alpha_s':>7s} {'alpha':>5s} {'img':>4s} {'fhtw(R)':>8s}")
    for name, h in families(args.kmax):
        rho, sources = fractional_cover_number(h), source_number(h)
        if h.n <= 10:
            rep = invariant_report(h)
            alpha, img_, width = rep.alpha, rep.img, str(rep.fhtw)
        else:
            alpha = img_ = width = "-"
        print(f"{name:28s} {h.n:3d} {str(rho):>6s} {sources:7d} "
              f"{alpha!s:>5s} {img_!s:>4s} {width:>8s}")


if __name__ == "__main__":
    main()
