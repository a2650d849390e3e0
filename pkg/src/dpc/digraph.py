"""Digraphs on dense vertex ids, SCCs, quotients, MR-minor operations and
small-graph isomorphism utilities.

Vertices are ``0..n-1``. Loops are allowed; parallel arcs are not, but a
forward/backward pair ``(u, v), (v, u)`` is. Every operation returns a new
immutable value. Vertex renumbering after deletions is order preserving.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateArcError, GraphOperationError, ParseError, VertexRangeError
from .limits import check, get_limits

Arc = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[Arc] = frozenset()
    out_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        n = self.n
        if n < 0:
            raise VertexRangeError(f"negative vertex count {n}")
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"arc ({u}, {v}) out of range for n={n}")
            out[u].append(v)
            inn[v].append(u)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out_adj", tuple(tuple(sorted(a)) for a in out))
        object.__setattr__(self, "in_adj", tuple(tuple(sorted(a)) for a in inn))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"

    @property
    def m(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def loops(self) -> list[int]:
        return sorted(u for u, v in self.arcs if u == v)

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.arcs)

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def max_outdegree(self) -> int:
        return max((len(a) for a in self.out_adj), default=0)

    def reach(self, sources: Iterable[int]) -> frozenset[int]:
        """Vertices reachable from ``sources`` (sources included)."""
        seen = set(sources)
        stack = list(seen)
        while stack:
            u = stack.pop()
            for w in self.out_adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n
        for u, v in self.arcs:
            indeg[v] += 1
        stack = [v for v in range(self.n) if indeg[v] == 0]
        done = 0
        while stack:
            u = stack.pop()
            done += 1
            for w in self.out_adj[u]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return done == self.n

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        """Subgraph induced by ``vertices``, relabelled in ascending order."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        return Digraph(
            len(keep), frozenset((pos[u], pos[v]) for u, v in self.arcs if u in pos and v in pos)
        )

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Apply vertex map ``v -> perm[v]`` (a bijection onto 0..n-1)."""
        return Digraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))

    def without_loops(self) -> "Digraph":
        return Digraph(self.n, frozenset(a for a in self.arcs if a[0] != a[1]))

    def underlying_edges(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v in self.arcs if u != v}


@dataclass(frozen=True)
class UGraph:
    """Loop-free undirected graph; edges stored as ``(min, max)`` pairs."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise GraphOperationError(f"undirected loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexRangeError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def complete(cls, k: int) -> "UGraph":
        return cls(k, frozenset(itertools.combinations(range(k), 2)))


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks))

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple((v,) for v in range(n)))

    def validate(self, n: int) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise GraphOperationError("empty block in partition")
            for v in b:
                if v in seen or not 0 <= v < n:
                    raise GraphOperationError(f"partition is not a partition of 0..{n - 1}")
                seen.add(v)
        if len(seen) != n:
            raise GraphOperationError(f"partition does not cover 0..{n - 1}")

    def block_map(self, n: int) -> list[int]:
        """``result[v]`` is the index of the block holding ``v``."""
        self.validate(n)
        where = [0] * n
        for i, b in enumerate(self.blocks):
            for v in b:
                where[v] = i
        return where

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class SccDecomposition:
    classes: Partition
    condensation: Digraph
    source_classes: tuple[int, ...]
    class_of: tuple[int, ...]

    def sink_classes(self) -> tuple[int, ...]:
        c = self.condensation
        return tuple(i for i in range(c.n) if not c.out_adj[i])


# ---------------------------------------------------------------- text formats


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped.split()


def _ints(tokens: list[str], lineno: int, count: int) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} integers, got {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None


def _parse_pairs(lines: Iterator[tuple[int, list[str]]], what: str):
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"empty {what} input") from None
    n, m = _ints(tokens, lineno, 2)
    if n < 0 or m < 0:
        raise ParseError("negative header value", lineno)
    pairs = []
    for _ in range(m):
        try:
            lineno, tokens = next(lines)
        except StopIteration:
            raise ParseError(f"expected {m} arc lines, got {len(pairs)}") from None
        u, v = _ints(tokens, lineno, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"vertex out of range 0..{n - 1}", lineno)
        pairs.append((lineno, u, v))
    return n, pairs


def parse_digraph(text: str) -> Digraph:
    lines = _content_lines(text)
    n, pairs = _parse_pairs(lines, "digraph")
    arcs: set[Arc] = set()
    for lineno, u, v in pairs:
        if (u, v) in arcs:
            raise DuplicateArcError(f"duplicate arc {u} {v}", lineno)
        arcs.add((u, v))
    extra = next(lines, None)
    if extra is not None:
        raise ParseError("trailing content after arc list", extra[0])
    return Digraph(n, frozenset(arcs))


def parse_ugraph(text: str) -> UGraph:
    lines = _content_lines(text)
    n, pairs = _parse_pairs(lines, "graph")
    edges: set[tuple[int, int]] = set()
    for lineno, u, v in pairs:
        if u == v:
            raise ParseError(f"loop {u} {u} not allowed in .ug", lineno)
        e = (min(u, v), max(u, v))
        if e in edges:
            raise DuplicateArcError(f"duplicate edge {u} {v}", lineno)
        edges.add(e)
    extra = next(lines, None)
    if extra is not None:
        raise ParseError("trailing content after edge list", extra[0])
    return UGraph(n, frozenset(edges))


def format_digraph(d: Digraph) -> str:
    lines = [f"{d.n} {d.m}"]
    lines += [f"{u} {v}" for u, v in sorted(d.arcs)]
    return "\n".join(lines) + "\n"


def read_digraph(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_digraph(fh.read())


# ---------------------------------------------------------------- SCC


def _tarjan(d: Digraph) -> list[list[int]]:
    index = [-1] * d.n
    low = [0] * d.n
    on_stack = [False] * d.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(d.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            succ = d.out_adj[v]
            if i < len(succ):
                work[-1] = (v, i + 1)
                w = succ[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def scc(d: Digraph) -> SccDecomposition:
    """Strongly connected components, ordered by smallest member."""
    comps = sorted((sorted(c) for c in _tarjan(d)), key=lambda c: c[0])
    class_of = [0] * d.n
    for i, c in enumerate(comps):
        for v in c:
            class_of[v] = i
    carcs = frozenset(
        (class_of[u], class_of[v]) for u, v in d.arcs if class_of[u] != class_of[v]
    )
    cond = Digraph(len(comps), carcs)
    sources = tuple(i for i in range(cond.n) if not cond.in_adj[i])
    return SccDecomposition(Partition.of(comps), cond, sources, tuple(class_of))


# ---------------------------------------------------------------- quotients and minors


def quotient(d: Digraph, sigma: Partition) -> Digraph:
    where = sigma.block_map(d.n)
    return Digraph(len(sigma), frozenset((where[u], where[v]) for u, v in d.arcs))


def contraction_map(n: int, u: int, v: int) -> list[int]:
    """Vertex map used by :func:`contract_arc`: the merged vertex takes the
    position of ``min(u, v)``, later vertices shift down past ``max(u, v)``."""
    lo, hi = min(u, v), max(u, v)
    out = []
    for w in range(n):
        if w == hi:
            out.append(lo)
        elif w > hi:
            out.append(w - 1)
        else:
            out.append(w)
    return out


def contract_arc(d: Digraph, arc: Arc) -> Digraph:
    u, v = arc
    if arc not in d.arcs:
        raise GraphOperationError(f"arc {arc} not present")
    if u == v:
        raise GraphOperationError("cannot contract a loop")
    f = contraction_map(d.n, u, v)
    arcs = {(f[a], f[b]) for a, b in d.arcs if (a, b) != (u, v)}
    return Digraph(d.n - 1, frozenset(arcs))


def sink_delete(d: Digraph, t: Iterable[int]) -> Digraph:
    t = frozenset(t)
    dec = scc(d)
    classes = [frozenset(c) for c in dec.classes.blocks]
    if t not in classes:
        raise GraphOperationError(f"{sorted(t)} is not a strongly connected component")
    if dec.condensation.out_adj[classes.index(t)]:
        raise GraphOperationError(f"{sorted(t)} is not a sink of the condensation")
    return d.induced(w for w in range(d.n) if w not in t)


def delete_loop(d: Digraph, u: int) -> Digraph:
    if (u, u) not in d.arcs:
        raise GraphOperationError(f"no loop at {u}")
    return Digraph(d.n, d.arcs - {(u, u)})


def tensor(d1: Digraph, d2: Digraph) -> Digraph:
    """Categorical product; vertex ``(a, b)`` is numbered ``a * d2.n + b``."""
    n2 = d2.n
    arcs = frozenset(
        (a * n2 + b, c * n2 + e) for a, c in d1.arcs for b, e in d2.arcs
    )
    return Digraph(d1.n * n2, arcs)


def directed_split(g: UGraph) -> Digraph:
    """1-subdivision oriented towards the original vertices.

    Original vertices keep ids ``0..n-1``; the subdivision vertex of the
    i-th edge (sorted order) gets id ``n + i``.
    """
    arcs = set()
    for i, (u, v) in enumerate(sorted(g.edges)):
        x = g.n + i
        arcs.add((x, u))
        arcs.add((x, v))
    return Digraph(g.n + len(g.edges), frozenset(arcs))


def is_canonical_dag(d: Digraph) -> bool:
    if not d.is_acyclic():
        return False
    return all(not d.in_adj[v] or not d.out_adj[v] for v in range(d.n))


def arc_supergraphs(d: Digraph, budget: int | None = None) -> Iterator[Digraph]:
    """All loop-free digraphs on V(d) whose arc set contains E(d)."""
    if d.has_loops():
        raise GraphOperationError("arc supergraphs are defined for loop-free digraphs")
    free = [(u, v) for u in range(d.n) for v in range(d.n) if u != v and (u, v) not in d.arcs]
    check(len(free), get_limits().arc_supergraph_budget if budget is None else budget,
          "free arc slots")
    for mask in range(1 << len(free)):
        extra = [free[i] for i in range(len(free)) if mask >> i & 1]
        yield Digraph(d.n, d.arcs | frozenset(extra))


# ---------------------------------------------------------------- partitions


def set_partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``0..n-1`` via restricted growth strings."""
    if n == 0:
        yield Partition(())
        return
    rgs = [0] * n

    def rec(i: int, top: int) -> Iterator[Partition]:
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(top + 1)]
            for v, b in enumerate(rgs):
                blocks[b].append(v)
            yield Partition(tuple(tuple(b) for b in blocks))
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


# ---------------------------------------------------------------- isomorphism


def _refined_colors(d: Digraph) -> list[int]:
    """Colour refinement seeded with (loop, indeg, outdeg); ranks are
    isomorphism invariant because they are derived from sorted signatures."""
    loops = {u for u, v in d.arcs if u == v}
    sig = [(v in loops, len(d.in_adj[v]), len(d.out_adj[v])) for v in range(d.n)]
    colors = _rank(sig)
    while True:
        sig2 = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in d.out_adj[v])),
                tuple(sorted(colors[w] for w in d.in_adj[v])),
            )
            for v in range(d.n)
        ]
        new = _rank(sig2)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _rank(sig: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sig)))}
    return [order[s] for s in sig]


def _cell_relabelings(colors: list[int]) -> Iterator[list[int]]:
    """Yield vertex maps v -> new label that send colour classes to
    consecutive label ranges in colour order."""
    n = len(colors)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    for choice in itertools.product(*(itertools.permutations(c) for c in ordered)):
        perm = [0] * n
        label = 0
        for cell in choice:
            for v in cell:
                perm[v] = label
                label += 1
        yield perm


@lru_cache(maxsize=1 << 16)
def _canonical(d: Digraph) -> tuple[tuple[int, ...], tuple]:
    colors = _refined_colors(d)
    best_key = None
    best_perm = None
    for perm in _cell_relabelings(colors):
        key = tuple(sorted((perm[u], perm[v]) for u, v in d.arcs))
        if best_key is None or key < best_key:
            best_key, best_perm = key, perm
    assert best_perm is not None or d.n == 0
    return tuple(best_perm or ()), (d.n, tuple(sorted(colors)), best_key)


def canonical_form(d: Digraph) -> tuple[tuple[int, ...], tuple]:
    """Return ``(labeling, key)``; ``d.relabel(labeling)`` is the canonical
    representative and equal keys mean isomorphic digraphs."""
    check(d.n, get_limits().small_graph, "canonical_form vertex count")
    return _canonical(d)


def canonical_key(d: Digraph) -> tuple:
    return canonical_form(d)[1]


def canonical_digraph(d: Digraph) -> Digraph:
    perm, _ = canonical_form(d)
    return d.relabel(perm)


def is_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    return d1.n == d2.n and d1.m == d2.m and canonical_key(d1) == canonical_key(d2)


@lru_cache(maxsize=1 << 14)
def _aut_count(d: Digraph) -> int:
    colors = _refined_colors(d)
    # automorphisms preserve refined colours, so only permute within cells
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    groups = list(cells.values())
    count = 0
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = [0] * d.n
        for g, img in zip(groups, choice):
            for v, w in zip(g, img):
                perm[v] = w
        if all((perm[u], perm[v]) in d.arcs for u, v in d.arcs):
            count += 1
    return count


def automorphism_count(d: Digraph) -> int:
    check(d.n, get_limits().small_graph, "automorphism_count vertex count")
    return _aut_count(d)


# ---------------------------------------------------------------- named graphs


def cycle(k: int) -> Digraph:
    return Digraph(k, frozenset((i, (i + 1) % k) for i in range(k)))


def path(k: int) -> Digraph:
    return Digraph(k, frozenset((i, i + 1) for i in range(k - 1)))


def transitive_tournament(k: int) -> Digraph:
    return Digraph(k, frozenset(itertools.combinations(range(k), 2)))


def disjoint_union(*graphs: Digraph) -> Digraph:
    arcs = set()
    offset = 0
    for g in graphs:
        arcs |= {(u + offset, v + offset) for u, v in g.arcs}
        offset += g.n
    return Digraph(offset, frozenset(arcs))


def out_star(k: int) -> Digraph:
    """Vertex 0 with arcs to ``1..k``."""
    return Digraph(k + 1, frozenset((0, i) for i in range(1, k + 1)))


def loop_vertex() -> Digraph:
    return Digraph(1, frozenset({(0, 0)}))


def enumerate_digraphs(n: int, loops: bool = False) -> list[Digraph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Built by extending the classes on ``n - 1`` vertices with a new vertex,
    which reaches every class since deleting any vertex gives a smaller one.
    """
    return list(_enumerate(n, loops))


@lru_cache(maxsize=None)
def _enumerate(n: int, loops: bool) -> tuple[Digraph, ...]:
    if n == 0:
        return (Digraph(0),)
    new = n - 1
    slots = [(new, w) for w in range(new)] + [(w, new) for w in range(new)]
    if loops:
        slots.append((new, new))
    seen: dict[tuple, Digraph] = {}
    for base in _enumerate(n - 1, loops):
        for mask in range(1 << len(slots)):
            extra = frozenset(slots[i] for i in range(len(slots)) if mask >> i & 1)
            g = Digraph(n, base.arcs | extra)
            perm, key = _canonical(g)
            if key not in seen:
                seen[key] = g.relabel(perm)
    return tuple(seen[k] for k in sorted(seen))
