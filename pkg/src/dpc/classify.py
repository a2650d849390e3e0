"""Tractability verdicts for a single pattern and a seeded host generator."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .digraph import Digraph, canonical_digraph
from .hypergraph import fractional_cover_number, source_number, vertex_cover_number


@dataclass(frozen=True)
class PatternSummary:
    n: int
    m: int
    loops: int
    acyclic: bool


@dataclass(frozen=True)
class Verdict:
    pattern_summary: PatternSummary
    rho_star: Fraction
    source_number: int
    # A single pattern always has finite invariants; the booleans record
    # that the class criterion is met by any class with these values bounded.
    sub_fpt: bool
    indsub_fpt_bounded_source: bool
    predicted_sub_exponent: Fraction
    predicted_indsub_exponent: int
    vc: int
    sub_criterion: str = "bounded-outdegree hosts: #Sub is FPT iff rho* is bounded over the class"
    indsub_criterion: str = (
        "bounded-outdegree hosts: #IndSub is FPT iff the source number is bounded over the class"
    )
    unbounded_sub_criterion: str = "unbounded outdegree: #Sub is FPT iff vc is bounded over the class"
    unbounded_indsub_criterion: str = (
        "unbounded outdegree: #IndSub is FPT iff pattern size is bounded over the class"
    )

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("rho_star", "predicted_sub_exponent"):
            v = getattr(self, key)
            out[key] = f"{v.numerator}/{v.denominator}"
        return out


def classify(h: Digraph) -> Verdict:
    """Verdict computed on the canonical representative, so isomorphic
    patterns get identical verdicts."""
    c = canonical_digraph(h)
    rho = fractional_cover_number(c)
    alpha_s = source_number(c)
    return Verdict(
        pattern_summary=PatternSummary(c.n, c.m, len(c.loops()), c.is_acyclic()),
        rho_star=rho,
        source_number=alpha_s,
        sub_fpt=True,
        indsub_fpt_bounded_source=True,
        predicted_sub_exponent=rho,
        predicted_indsub_exponent=alpha_s,
        vc=vertex_cover_number(c),
    )


def gen_host(n: int, d: int, seed: int, acyclic: bool = False, loops: bool = False) -> Digraph:
    """Random host with maximum outdegree <= d. Each vertex first gets a
    loop with probability 1/4 (if ``loops``), then fills its remaining
    outdegree budget with distinct random targets (higher ids only when
    ``acyclic``)."""
    if n < 1 or d < 0:
        raise ValueError("gen_host needs n >= 1 and d >= 0")
    rng = random.Random(seed)
    arcs = set()
    for u in range(n):
        budget = d
        if loops and budget > 0 and rng.random() < 0.25:
            arcs.add((u, u))
            budget -= 1
        lo = u + 1 if acyclic else 0
        pool = n - lo - (0 if acyclic else 1)
        k = min(budget, pool)
        chosen: set[int] = set()
        while len(chosen) < k:
            w = rng.randrange(lo, n)
            if w != u:
                chosen.add(w)
        arcs |= {(u, w) for w in chosen}
    return Digraph(n, frozenset(arcs))
