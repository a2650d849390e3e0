"""Subgraph and induced-subgraph counts as rational combinations of
homomorphism counts.

    #Sub(H, G)    = 1/|Aut H| * sum_sigma mu(sigma) * #Hom(H/sigma, G)
    #IndSub(H, G) = 1/|Aut H| * sum_{F >= H} (-1)^(|E F| - |E H|) * |Aut F| * #Sub(F, G)

where sigma ranges over vertex partitions, mu is the Moebius function of
the partition lattice (bottom to sigma) and F over loop-free arc
supergraphs of H on the same vertex set. Terms are collected per
isomorphism class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Literal

from .digraph import (
    Digraph,
    Partition,
    arc_supergraphs,
    automorphism_count,
    canonical_digraph,
    canonical_key,
    format_digraph,
    quotient,
    set_partitions,
)
from .errors import DefectError, GraphOperationError
from .homcount import count_hom
from .hypergraph import source_number
from .limits import check, get_limits

HomCounter = Callable[[Digraph, Digraph], int]


@dataclass(frozen=True)
class BasisExpansion:
    kind: Literal["sub", "indsub"]
    terms: tuple[tuple[Digraph, Fraction], ...]

    def __post_init__(self) -> None:
        keys = [canonical_key(f) for f, _ in self.terms]
        if len(set(keys)) != len(keys):
            raise DefectError("basis terms must be pairwise non-isomorphic")
        if any(c == 0 for _, c in self.terms):
            raise DefectError("basis terms must have nonzero coefficients")

    def __len__(self) -> int:
        return len(self.terms)

    def as_dict(self) -> dict[tuple, Fraction]:
        return {canonical_key(f): c for f, c in self.terms}

    def coefficient(self, f: Digraph) -> Fraction:
        return self.as_dict().get(canonical_key(f), Fraction(0))

    def evaluate(self, g: Digraph, hom: HomCounter = count_hom) -> Fraction:
        return sum((c * hom(f, g) for f, c in self.terms), Fraction(0))

    def format(self) -> str:
        blocks = []
        for f, c in self.terms:
            blocks.append(f"# coefficient {c.numerator}/{c.denominator}\n{format_digraph(f)}")
        return "\n".join(blocks)


def moebius(sigma: Partition) -> int:
    """mu(bottom, sigma) in the partition lattice."""
    out = 1
    for b in sigma.blocks:
        out *= (-1) ** (len(b) - 1) * math.factorial(len(b) - 1)
    return out


def _require_loop_free(h: Digraph) -> None:
    if h.has_loops():
        raise GraphOperationError("patterns must be loop-free")


def _collect(acc: dict[tuple, Fraction], reps: dict[tuple, Digraph], kind) -> BasisExpansion:
    keys = sorted((k for k, c in acc.items() if c != 0), key=lambda k: (k[0], k))
    return BasisExpansion(kind, tuple((reps[k], acc[k]) for k in keys))


@lru_cache(maxsize=None)
def _sub_terms(h: Digraph) -> tuple[tuple[tuple, Digraph, Fraction], ...]:
    """Quotient terms of a canonical pattern ``h``: (key, rep, coeff)."""
    aut = automorphism_count(h)
    acc: dict[tuple, int] = {}
    reps: dict[tuple, Digraph] = {}
    for sigma in set_partitions(h.n):
        q = quotient(h, sigma)
        k = canonical_key(q)
        if k not in reps:
            reps[k] = canonical_digraph(q)
        acc[k] = acc.get(k, 0) + moebius(sigma)
    keys = sorted((k for k, c in acc.items() if c), key=lambda k: (k[0], k))
    return tuple((k, reps[k], Fraction(acc[k], aut)) for k in keys)


def sub_basis(h: Digraph) -> BasisExpansion:
    _require_loop_free(h)
    check(h.n, get_limits().sub_pattern, "sub_basis pattern size")
    return BasisExpansion("sub", tuple((rep, c) for _, rep, c in _sub_terms(canonical_digraph(h))))


def arc_supergraph_signs(h: Digraph) -> list[tuple[Digraph, int]]:
    """Each labelled loop-free arc supergraph with its inclusion-exclusion sign."""
    _require_loop_free(h)
    return [(f, (-1) ** (f.m - h.m)) for f in arc_supergraphs(h)]


@lru_cache(maxsize=None)
def _indsub_terms(h: Digraph) -> tuple[tuple[tuple, Digraph, Fraction], ...]:
    aut_h = automorphism_count(h)
    # supergraph level: per isomorphism class, sum of signs * |Aut F| / |Aut H|
    star: dict[tuple, Fraction] = {}
    reps: dict[tuple, Digraph] = {}
    for f in arc_supergraphs(h):
        k = canonical_key(f)
        if k not in reps:
            reps[k] = canonical_digraph(f)
        star[k] = star.get(k, Fraction(0)) + (-1) ** (f.m - h.m)
    acc: dict[tuple, Fraction] = {}
    qreps: dict[tuple, Digraph] = {}
    for k, signs in star.items():
        if signs == 0:
            continue
        f = reps[k]
        weight = signs * Fraction(automorphism_count(f), aut_h)
        for qk, rep, c in _sub_terms(f):
            qreps.setdefault(qk, rep)
            acc[qk] = acc.get(qk, Fraction(0)) + weight * c
    keys = sorted((k for k, c in acc.items() if c), key=lambda k: (k[0], k))
    return tuple((k, qreps[k], acc[k]) for k in keys)


def indsub_basis(h: Digraph) -> BasisExpansion:
    _require_loop_free(h)
    check(h.n, get_limits().indsub_pattern, "indsub_basis pattern size")
    free = h.n * (h.n - 1) - h.m
    check(free, get_limits().arc_supergraph_budget, "free arc slots")
    return BasisExpansion(
        "indsub", tuple((rep, c) for _, rep, c in _indsub_terms(canonical_digraph(h)))
    )


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise DefectError(f"{what} evaluated to {value}, expected a nonnegative integer")
    return value.numerator


def count_sub(h: Digraph, g: Digraph, hom: HomCounter = count_hom) -> int:
    return _integral(sub_basis(h).evaluate(g, hom), "subgraph count")


def check_source_bound(h: Digraph, basis: BasisExpansion) -> None:
    """Every term of the induced basis has at most as many sources as H."""
    bound = source_number(h)
    for f, _ in basis.terms:
        if source_number(f) > bound:
            raise DefectError(f"basis term {f} has more than {bound} sources")


def loop_free_part(g: Digraph) -> Digraph:
    """Host restricted to vertices without loops. A vertex set that contains
    a looped vertex never induces a loop-free pattern."""
    looped = set(g.loops())
    if not looped:
        return g
    return g.induced(v for v in range(g.n) if v not in looped)


def count_indsub(h: Digraph, g: Digraph, hom: HomCounter = count_hom) -> int:
    basis = indsub_basis(h)
    check_source_bound(h, basis)
    return _integral(basis.evaluate(loop_free_part(g), hom), "induced subgraph count")


def term_keys(bases: Iterable[BasisExpansion]) -> set[tuple]:
    return {canonical_key(f) for b in bases for f, _ in b.terms}
