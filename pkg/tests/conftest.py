from __future__ import annotations

import itertools
import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dpc.digraph import Digraph, disjoint_union, transitive_tournament
from dpc.gadgets import ColoredDigraph
from dpc.hypergraph import Hypergraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def digraphs(draw, max_n: int = 6, loops: bool = False, min_n: int = 1) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    arcs = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Digraph(n, frozenset(arcs))


@st.composite
def hypergraphs(draw, max_n: int = 8, max_m: int = 6) -> Hypergraph:
    """Hypergraphs with every vertex covered by at least one non-empty edge."""
    n = draw(st.integers(1, max_n))
    edges = draw(
        st.lists(st.sets(st.integers(0, n - 1), min_size=1), min_size=1, max_size=max_m)
    )
    covered = set().union(*edges)
    edges += [{v} for v in range(n) if v not in covered]
    return Hypergraph.from_sets(n, edges)


def random_digraph(rng: random.Random, n: int, p: float = 0.3, loops: bool = False) -> Digraph:
    arcs = {(u, v) for u in range(n) for v in range(n) if (loops or u != v) and rng.random() < p}
    return Digraph(n, frozenset(arcs))


def random_hypergraph(rng: random.Random, n: int) -> Hypergraph:
    m = rng.randint(1, 6)
    edges = [set(rng.sample(range(n), rng.randint(1, n))) for _ in range(m)]
    covered = set().union(*edges)
    edges += [{v} for v in range(n) if v not in covered]
    return Hypergraph.from_sets(n, edges)


def delta1() -> Digraph:
    return Digraph(3, frozenset({(0, 1), (1, 2), (2, 0)}))


def delta2() -> Digraph:
    return transitive_tournament(3)


def delta(kind: int, k: int) -> Digraph:
    base = delta1() if kind == 1 else delta2()
    return disjoint_union(*([base] * k))


def h_arrow(k: int) -> Digraph:
    """U = 2k sources, D = all k-subsets of U as sinks, arc i -> A iff i in A."""
    subsets = list(itertools.combinations(range(2 * k), k))
    arcs = {(i, 2 * k + j) for j, a in enumerate(subsets) for i in a}
    return Digraph(2 * k + len(subsets), frozenset(arcs))


# independent oracles, deliberately naive


def perm_isomorphic(a: Digraph, b: Digraph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    return any(
        {(p[u], p[v]) for u, v in a.arcs} == b.arcs for p in itertools.permutations(range(a.n))
    )


def perm_aut(a: Digraph) -> int:
    return sum(
        {(p[u], p[v]) for u, v in a.arcs} == a.arcs for p in itertools.permutations(range(a.n))
    )


def naive_hom(h: Digraph, g: Digraph) -> int:
    return sum(
        all((f[u], f[v]) in g.arcs for u, v in h.arcs)
        for f in itertools.product(range(g.n), repeat=h.n)
    )


def random_colored(rng: random.Random, pattern: Digraph, n: int, p: float = 0.5) -> ColoredDigraph:
    """Random surjective pattern-coloured host with n >= pattern.n vertices."""
    color = list(range(pattern.n)) + [rng.randrange(pattern.n) for _ in range(n - pattern.n)]
    rng.shuffle(color)
    arcs = {
        (a, b)
        for a in range(n)
        for b in range(n)
        if (color[a], color[b]) in pattern.arcs and rng.random() < p
    }
    return ColoredDigraph(Digraph(n, frozenset(arcs)), tuple(color))
