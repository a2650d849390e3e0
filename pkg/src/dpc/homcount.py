"""Homomorphism counting through a join-counting instance.

Each source component s_i of the pattern contributes one relation: the
images of its reach set R(s_i) under all homomorphisms of the induced
pattern H[R(s_i)]. Because every vertex of R(s_i) is reachable from s_i,
those images stay within distance |V(H)|-1 of the image of s_i, so they
can be enumerated locally from each host vertex in time bounded by the
host outdegree. The join of all relations is then counted by a tree
decomposition DP.

Brute-force oracles for #Hom, #Sub and #IndSub live at the bottom.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Hashable, Sequence

from .digraph import Digraph, scc
from .errors import DefectError, UncoverableVertexError
from .hypergraph import TreeDecomposition, star_decomposition
from .limits import check, get_limits


@dataclass(frozen=True)
class Relation:
    scope: tuple[int, ...]
    tuples: frozenset[tuple[int, ...]]
    label: Hashable = None

    def __post_init__(self) -> None:
        if len(set(self.scope)) != len(self.scope):
            raise DefectError(f"repeated variable in scope {self.scope}")
        object.__setattr__(self, "tuples", frozenset(self.tuples))
        k = len(self.scope)
        if any(len(t) != k for t in self.tuples):
            raise DefectError("tuple length does not match scope")

    def project(self, variables: Sequence[int]) -> "Relation":
        pos = [self.scope.index(v) for v in variables]
        return Relation(
            tuple(variables), frozenset(tuple(t[p] for p in pos) for t in self.tuples), self.label
        )


@dataclass(frozen=True)
class CspInstance:
    pattern_vertices: int
    relations: tuple[Relation, ...]
    host_vertex_count: int


# ---------------------------------------------------------------- partial homomorphisms


def _extension_plan(h: Digraph, reach: frozenset[int], root: int):
    """BFS order of H[reach] from ``root`` with, for each later vertex, the
    index of an earlier in-neighbour and all arc checks against earlier
    vertices (loops included)."""
    order = [root]
    seen = {root}
    parent = {}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in h.out_adj[u]:
            if w in reach and w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
                queue.append(w)
    if seen != reach:
        raise DefectError("reach set not spanned from its source")
    pos = {v: i for i, v in enumerate(order)}
    steps = []
    for i, x in enumerate(order):
        outs = [pos[y] for y in h.out_adj[x] if y in pos and pos[y] < i]
        ins = [pos[y] for y in h.in_adj[x] if y in pos and pos[y] < i]
        steps.append((pos[parent[x]] if i else -1, tuple(outs), tuple(ins), (x, x) in h.arcs))
    return order, steps


def _homs_from(g: Digraph, v: int, steps, color, x_of) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []
    img = [0] * len(steps)
    arcs = g.arcs
    out_adj = g.out_adj

    def rec(i: int) -> None:
        if i == len(steps):
            found.append(tuple(img))
            return
        par, outs, ins, loop = steps[i]
        x = x_of[i]
        # candidates are out-neighbours of the parent's image, hence within
        # distance i of v: the N_{k-1}(v) restriction holds by construction
        for w in out_adj[img[par]]:
            if color is not None and color[w] != x:
                continue
            if loop and (w, w) not in arcs:
                continue
            if any((w, img[j]) not in arcs for j in outs):
                continue
            if any((img[j], w) not in arcs for j in ins):
                continue
            img[i] = w
            rec(i + 1)

    _, _, _, loop = steps[0]
    if color is not None and color[v] != x_of[0]:
        return found
    if loop and (v, v) not in arcs:
        return found
    img[0] = v
    rec(1)
    return found


def enumerate_partial_homs(
    h: Digraph,
    source_class: Sequence[int],
    g: Digraph,
    color: Sequence[int] | None = None,
    threads: int = 1,
    label: Hashable = None,
) -> Relation:
    """Relation of all images of H[R(s)] in ``g``; ``color`` (host vertex ->
    pattern vertex) optionally restricts to colour-prescribed maps."""
    reach = h.reach(source_class)
    scope = tuple(sorted(reach))
    root = min(source_class)
    order, steps = _extension_plan(h, reach, root)
    back = [order.index(x) for x in scope]

    def chunk(vs: range) -> set[tuple[int, ...]]:
        out = set()
        for v in vs:
            for t in _homs_from(g, v, steps, color, order):
                out.add(tuple(t[p] for p in back))
        return out

    if threads > 1 and g.n > 1:
        step = -(-g.n // threads)
        parts = [range(a, min(a + step, g.n)) for a in range(0, g.n, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tuples = set().union(*pool.map(chunk, parts))
    else:
        tuples = chunk(range(g.n))
    return Relation(scope, frozenset(tuples), label)


def build_csp(
    h: Digraph, g: Digraph, color: Sequence[int] | None = None, threads: int = 1
) -> CspInstance:
    dec = scc(h)
    rels = tuple(
        enumerate_partial_homs(h, dec.classes.blocks[i], g, color, threads, label=i)
        for i in dec.source_classes
    )
    return CspInstance(h.n, rels, g.n)


# ---------------------------------------------------------------- join counting


def _bag_assignments(bag: tuple[int, ...], projections: list[Relation]) -> list[tuple[int, ...]]:
    """All assignments of ``bag`` consistent with every projection."""
    bound: dict[int, int] = {}
    covered = set()
    for p in projections:
        covered.update(p.scope)
    missing = set(bag) - covered
    if missing:
        raise UncoverableVertexError(f"bag vertices {sorted(missing)} occur in no relation")
    # greedy order: smallest relation first, then most overlap with bound vars
    remaining = sorted(projections, key=lambda r: len(r.tuples))
    plan = []
    seen_vars: set[int] = set()
    while remaining:
        nxt = max(remaining, key=lambda r: (len(seen_vars & set(r.scope)), -len(r.tuples)))
        remaining.remove(nxt)
        shared = tuple(v for v in nxt.scope if v in seen_vars)
        fresh = tuple(v for v in nxt.scope if v not in seen_vars)
        index: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        spos = [nxt.scope.index(v) for v in shared]
        fpos = [nxt.scope.index(v) for v in fresh]
        for t in nxt.tuples:
            index.setdefault(tuple(t[p] for p in spos), []).append(tuple(t[p] for p in fpos))
        plan.append((shared, fresh, index))
        seen_vars.update(nxt.scope)

    out: list[tuple[int, ...]] = []

    def rec(i: int) -> None:
        if i == len(plan):
            out.append(tuple(bound[v] for v in bag))
            return
        shared, fresh, index = plan[i]
        for ext in index.get(tuple(bound[v] for v in shared), ()):
            for v, w in zip(fresh, ext):
                bound[v] = w
            rec(i + 1)
        for v in fresh:
            bound.pop(v, None)

    rec(0)
    return out


def count_join(instance: CspInstance, td: TreeDecomposition) -> int:
    bags = [tuple(sorted(b)) for b in td.bags]
    rels = instance.relations
    home = []
    for r in rels:
        s = set(r.scope)
        where = next((i for i, b in enumerate(td.bags) if s <= b), None)
        if where is None:
            raise DefectError(f"relation {r.label!r} fits in no bag")
        home.append(where)
    bag_vars = set().union(*td.bags) if bags else set()
    for v in range(instance.pattern_vertices):
        if v not in bag_vars:
            raise DefectError(f"pattern vertex {v} is in no bag")

    nb = td.neighbors()
    parent = [-1] * len(bags)
    order = [0]
    seen = {0}
    for u in order:
        for w in nb[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)

    summaries: dict[int, tuple[tuple[int, ...], dict]] = {}
    for b in reversed(order):
        bag = bags[b]
        bset = set(bag)
        projections = []
        for r, hb in zip(rels, home):
            inter = [v for v in r.scope if v in bset]
            if not inter:
                continue
            projections.append(r if hb == b else r.project(inter))
        children = [c for c in nb[b] if c != parent[b]]
        table: dict[tuple[int, ...], int] = {}
        pos = {v: i for i, v in enumerate(bag)}
        child_info = []
        for c in children:
            sep, summary = summaries.pop(c)
            child_info.append(([pos[v] for v in sep], summary))
        for a in (_bag_assignments(bag, projections) if bag else [()]):
            value = 1
            for sep_pos, summary in child_info:
                value *= summary.get(tuple(a[p] for p in sep_pos), 0)
                if not value:
                    break
            if value:
                table[a] = value
        if parent[b] < 0:
            return sum(table.values())
        sep = tuple(v for v in bag if v in td.bags[parent[b]])
        spos = [pos[v] for v in sep]
        summary: dict[tuple[int, ...], int] = {}
        for a, val in table.items():
            key = tuple(a[p] for p in spos)
            summary[key] = summary.get(key, 0) + val
        summaries[b] = (sep, summary)
    raise DefectError("tree decomposition has no root")


def count_hom(
    h: Digraph, g: Digraph, color: Sequence[int] | None = None, threads: int = 1
) -> int:
    check(h.n, get_limits().pattern, "count_hom pattern size")
    if h.n == 0:
        return 1
    return count_join(build_csp(h, g, color, threads), star_decomposition(h))


# ---------------------------------------------------------------- brute-force oracles


def _budget(h: Digraph, g: Digraph) -> None:
    check(g.n ** h.n, get_limits().oracle_budget, "brute-force map count")


def _weak_components(h: Digraph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in range(h.n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in h.out_adj[u] + h.in_adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _count_maps(
    h: Digraph,
    vertices: list[int],
    g: Digraph,
    injective: bool,
    induced: bool,
    color: Sequence[int] | None = None,
) -> int:
    """Backtracking over ``vertices`` in the given order, checking every
    pattern arc (and for ``induced`` every non-arc) as soon as both ends
    are placed."""
    k = len(vertices)
    img: dict[int, int] = {}
    used: set[int] = set()
    all_hosts = range(g.n)

    def ok(x: int, w: int) -> bool:
        if color is not None and color[w] != x:
            return False
        if injective and w in used:
            return False
        h_loop, g_loop = (x, x) in h.arcs, (w, w) in g.arcs
        if h_loop and not g_loop or induced and g_loop and not h_loop:
            return False
        for y, z in img.items():
            for a, b, c, d in ((x, y, w, z), (y, x, z, w)):
                has = (a, b) in h.arcs
                if has and (c, d) not in g.arcs:
                    return False
                if induced and not has and (c, d) in g.arcs:
                    return False
        return True

    def candidates(x: int):
        for y in h.in_adj[x]:
            if y in img:
                return g.out_adj[img[y]]
        for y in h.out_adj[x]:
            if y in img:
                return g.in_adj[img[y]]
        return all_hosts

    def rec(i: int) -> int:
        x = vertices[i]
        if i == k - 1:
            return sum(1 for w in candidates(x) if ok(x, w))
        total = 0
        for w in candidates(x):
            if ok(x, w):
                img[x] = w
                used.add(w)
                total += rec(i + 1)
                del img[x]
                used.discard(w)
        return total

    return rec(0) if k else 1


def brute_hom(h: Digraph, g: Digraph, color: Sequence[int] | None = None) -> int:
    """Hom counts multiply over weakly connected pattern components."""
    _budget(h, g)
    total = 1
    for comp in _weak_components(h):
        total *= _count_maps(h, comp, g, injective=False, induced=False, color=color)
        if not total:
            break
    return total


def _aut(h: Digraph) -> int:
    return _count_maps(h, list(range(h.n)), h, injective=True, induced=False)


def brute_sub(h: Digraph, g: Digraph) -> int:
    """Subgraph copies = injective homomorphisms / |Aut(H)|."""
    _budget(h, g)
    if h.n > g.n:
        return 0
    inj = _count_maps(h, list(range(h.n)), g, injective=True, induced=False)
    a = _aut(h)
    if inj % a:
        raise DefectError("injective hom count not divisible by |Aut|")
    return inj // a


def brute_indsub(h: Digraph, g: Digraph) -> int:
    """Induced copies (loops included) = strong embeddings / |Aut(H)|."""
    _budget(h, g)
    if h.n > g.n:
        return 0
    emb = _count_maps(h, list(range(h.n)), g, injective=True, induced=True)
    a = _aut(h)
    if emb % a:
        raise DefectError("embedding count not divisible by |Aut|")
    return emb // a
