"""Hypergraphs derived from digraphs and their exact structural invariants.

The reachability hypergraph has one edge per source component of a digraph
(everything reachable from it); the contour removes each source's own
component from its edge and drops source vertices altogether. Fractional
parameters are solved exactly with :mod:`dpc.lp`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable

from . import lp
from .digraph import Digraph, UGraph, scc
from .errors import DefectError, ParseError, UnboundedError, UncoverableVertexError, VertexRangeError
from .limits import check, get_limits


@dataclass(frozen=True)
class Hypergraph:
    vertices: frozenset[int]
    edges: tuple[tuple[Hashable, frozenset[int]], ...]
    # labels of edges that became empty during construction; not LP rows
    empty_edges: tuple[Hashable, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        edges = tuple((lab, frozenset(e)) for lab, e in self.edges)
        labels = [lab for lab, _ in edges] + list(self.empty_edges)
        if len(set(labels)) != len(labels):
            raise DefectError("hyperedge labels must be unique")
        for lab, e in edges:
            if not e:
                raise DefectError(f"empty hyperedge {lab!r}; record it in empty_edges")
            if not e <= self.vertices:
                raise VertexRangeError(f"hyperedge {lab!r} leaves the vertex set")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Hypergraph":
        """Edges labelled by position; empty sets go to ``empty_edges``."""
        edges, empty = [], []
        for i, s in enumerate(sets):
            s = frozenset(s)
            (edges.append((i, s)) if s else empty.append(i))
        return cls(frozenset(range(n)), tuple(edges), tuple(empty))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_sets(self) -> list[frozenset[int]]:
        return [e for _, e in self.edges]

    def edge(self, label: Hashable) -> frozenset[int]:
        for lab, e in self.edges:
            if lab == label:
                return e
        if label in self.empty_edges:
            return frozenset()
        raise KeyError(label)

    def primal_neighbors(self) -> dict[int, set[int]]:
        nb: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edge_sets():
            for v in e:
                nb[v] |= e
        for v in nb:
            nb[v].discard(v)
        return nb

    def uncovered(self) -> frozenset[int]:
        covered = frozenset().union(*self.edge_sets()) if self.edges else frozenset()
        return self.vertices - covered


def parse_hypergraph(text: str) -> Hypergraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            try:
                rows.append((lineno, [int(t) for t in s.split()]))
            except ValueError:
                raise ParseError(f"non-integer token in {s!r}", lineno) from None
    if not rows:
        raise ParseError("empty hypergraph input")
    lineno, head = rows[0]
    if len(head) != 2 or min(head) < 0:
        raise ParseError("header must be 'n k'", lineno)
    n, k = head
    if len(rows) - 1 != k:
        raise ParseError(f"expected {k} edge lines, got {len(rows) - 1}")
    sets = []
    for lineno, vals in rows[1:]:
        if not vals or vals[0] != len(vals) - 1:
            raise ParseError("edge line must be 's v1 ... vs'", lineno)
        e = vals[1:]
        if any(not 0 <= v < n for v in e):
            raise VertexRangeError(f"vertex out of range 0..{n - 1}", lineno)
        if len(set(e)) != len(e):
            raise ParseError("repeated vertex inside a hyperedge", lineno)
        sets.append(e)
    return Hypergraph.from_sets(n, sets)


def format_hypergraph(h: Hypergraph) -> str:
    """Only for hypergraphs on ``0..n-1`` with labels ``0..k-1``."""
    n = max(h.vertices, default=-1) + 1
    by_label = {lab: e for lab, e in h.edges}
    for lab in h.empty_edges:
        by_label[lab] = frozenset()
    lines = [f"{n} {len(by_label)}"]
    for lab in sorted(by_label):
        e = sorted(by_label[lab])
        lines.append(" ".join(map(str, [len(e), *e])))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- tree decompositions


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree", tuple((int(a), int(b)) for a, b in self.tree))

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def violations(self, vertices: Iterable[int], edges: Iterable[Iterable[int]]) -> list[str]:
        out = []
        k = len(self.bags)
        if k == 0:
            return ["no bags"]
        if len(self.tree) != k - 1 or any(not (0 <= a < k and 0 <= b < k) for a, b in self.tree):
            out.append("tree has wrong shape")
        nb = self.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            for w in nb[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != k:
            out.append("tree is not connected")
        covered = frozenset().union(*self.bags)
        vertices = frozenset(vertices)
        if not vertices <= covered:
            out.append(f"vertices {sorted(vertices - covered)} in no bag")
        for e in edges:
            e = frozenset(e)
            if not any(e <= b for b in self.bags):
                out.append(f"edge {sorted(e)} in no bag")
        for v in covered:
            holders = {i for i, b in enumerate(self.bags) if v in b}
            start = next(iter(holders))
            reach = {start}
            stack = [start]
            while stack:
                for w in nb[stack.pop()]:
                    if w in holders and w not in reach:
                        reach.add(w)
                        stack.append(w)
            if reach != holders:
                out.append(f"bags holding {v} are not connected")
        return out

    def validate(self, h: Hypergraph) -> None:
        problems = self.violations(h.vertices, h.edge_sets())
        if problems:
            raise DefectError("invalid tree decomposition: " + "; ".join(problems))

    def width(self, h: Hypergraph) -> Fraction:
        return max((fractional_edge_cover(h, b)[0] for b in self.bags), default=Fraction(0))


# ---------------------------------------------------------------- construction from digraphs


def reachability_hypergraph(d: Digraph) -> Hypergraph:
    dec = scc(d)
    edges = []
    for i in dec.source_classes:
        edges.append((i, d.reach(dec.classes.blocks[i])))
    return Hypergraph(frozenset(range(d.n)), tuple(edges))


def contour(d: Digraph) -> Hypergraph:
    dec = scc(d)
    source_vertices = frozenset(
        v for i in dec.source_classes for v in dec.classes.blocks[i]
    )
    edges, empty = [], []
    for i in dec.source_classes:
        e = d.reach(dec.classes.blocks[i]) - frozenset(dec.classes.blocks[i])
        (edges.append((i, e)) if e else empty.append(i))
    return Hypergraph(frozenset(range(d.n)) - source_vertices, tuple(edges), tuple(empty))


def star_decomposition(d: Digraph) -> TreeDecomposition:
    """Centre bag of all non-source vertices plus one leaf per source's
    reach set. Bag ``i + 1`` (or bag 0 when the centre is dropped) belongs
    to the i-th source component in :func:`scc` order."""
    dec = scc(d)
    source_vertices = {v for i in dec.source_classes for v in dec.classes.blocks[i]}
    centre = frozenset(range(d.n)) - source_vertices
    leaves = [d.reach(dec.classes.blocks[i]) for i in dec.source_classes]
    if not leaves:
        return TreeDecomposition((frozenset(),))
    if len(leaves) == 1 and not centre:
        return TreeDecomposition((leaves[0],))
    bags = (centre, *leaves)
    return TreeDecomposition(bags, tuple((0, i) for i in range(1, len(bags))))


# ---------------------------------------------------------------- LP invariants


def fractional_edge_cover(
    h: Hypergraph, x: Iterable[int] | None = None
) -> tuple[Fraction, dict[Hashable, Fraction]]:
    xs = h.vertices if x is None else frozenset(x)
    weights: dict[Hashable, Fraction] = {lab: Fraction(0) for lab, _ in h.edges}
    weights.update({lab: Fraction(0) for lab in h.empty_edges})
    if not xs:
        return Fraction(0), weights
    value, chosen = _cover_lp(tuple(h.edge_sets()), frozenset(xs))
    for (lab, _), w in zip(h.edges, chosen):
        weights[lab] = w
    return value, weights


@lru_cache(maxsize=1 << 16)
def _cover_lp(edges: tuple[frozenset[int], ...], xs: frozenset[int]):
    order = sorted(xs)
    for v in order:
        if not any(v in e for e in edges):
            raise UncoverableVertexError(f"vertex {v} lies in no hyperedge")
    useful = [j for j, e in enumerate(edges) if e & xs]
    rows = [[1 if v in edges[j] else 0 for j in useful] for v in order]
    res = lp.solve([1] * len(useful), rows, [">="] * len(order), [1] * len(order))
    full = [Fraction(0)] * len(edges)
    for j, w in zip(useful, res.x):
        full[j] = w
    return res.value, tuple(full)


def fractional_independence(
    h: Hypergraph, zero: Iterable[int] = ()
) -> tuple[Fraction, dict[int, Fraction]]:
    """Maximum fractional independent set. Vertices in ``zero`` are pinned
    to weight 0 (used for the push-up check)."""
    bad = h.uncovered()
    if bad:
        raise UnboundedError(f"vertices {sorted(bad)} lie in no edge")
    order = sorted(h.vertices)
    if not order:
        return Fraction(0), {}
    zero = frozenset(zero)
    rows = [[1 if v in e else 0 for v in order] for e in h.edge_sets()]
    senses = ["<="] * len(rows)
    rhs = [1] * len(rows)
    for i, v in enumerate(order):
        if v in zero:
            rows.append([1 if j == i else 0 for j in range(len(order))])
            senses.append("=")
            rhs.append(0)
    res = lp.solve([1] * len(order), rows, senses, rhs, maximize=True)
    return res.value, dict(zip(order, res.x))


def independence_number(h: Hypergraph) -> int:
    check(h.n, get_limits().independence, "independence_number vertex count")
    order = sorted(h.vertices)
    idx = {v: i for i, v in enumerate(order)}
    nbmask = [0] * len(order)
    for v, nbs in h.primal_neighbors().items():
        for w in nbs:
            nbmask[idx[v]] |= 1 << idx[w]
    return _mis((1 << len(order)) - 1, tuple(nbmask))


def _mis(mask: int, nb: tuple[int, ...]) -> int:
    best = 0

    def rec(mask: int, size: int) -> None:
        nonlocal best
        if size + bin(mask).count("1") <= best:
            return
        if not mask:
            best = size
            return
        # branch on the vertex of maximum remaining degree
        v = max((i for i in range(len(nb)) if mask >> i & 1),
                key=lambda i: bin(nb[i] & mask).count("1"))
        if not nb[v] & mask:
            rec(mask & ~(1 << v), size + 1)
            return
        rec(mask & ~(1 << v) & ~nb[v], size + 1)
        rec(mask & ~(1 << v), size)

    rec(mask, 0)
    return best


def fractional_cover_number(d: Digraph) -> Fraction:
    value, _ = fractional_edge_cover(contour(d))
    return max(Fraction(1), value)


def source_number(d: Digraph) -> int:
    return len(scc(d).source_classes)


# ---------------------------------------------------------------- fhtw


def fhtw(h: Hypergraph) -> tuple[Fraction, TreeDecomposition]:
    """Exact fractional hypertree width by subset DP over elimination
    orderings of the primal graph."""
    check(h.n, get_limits().fhtw, "fhtw vertex count")
    bad = h.uncovered()
    if bad:
        raise UncoverableVertexError(f"vertices {sorted(bad)} lie in no hyperedge")
    order = sorted(h.vertices)
    k = len(order)
    if k == 0:
        return Fraction(0), TreeDecomposition((frozenset(),))
    idx = {v: i for i, v in enumerate(order)}
    adj = [0] * k
    for v, nbs in h.primal_neighbors().items():
        for w in nbs:
            adj[idx[v]] |= 1 << idx[w]
    edges = tuple(h.edge_sets())

    def bag(v: int, eliminated: int) -> int:
        """v plus every non-eliminated vertex reachable from v through
        eliminated vertices (bitmask)."""
        seen = 1 << v
        frontier = [v]
        out = 1 << v
        while frontier:
            u = frontier.pop()
            for w in range(k):
                if adj[u] >> w & 1 and not seen >> w & 1:
                    seen |= 1 << w
                    if eliminated >> w & 1:
                        frontier.append(w)
                    else:
                        out |= 1 << w
        return out

    def rho(mask: int) -> Fraction:
        return _cover_lp(edges, frozenset(order[i] for i in range(k) if mask >> i & 1))[0]

    full = (1 << k) - 1
    width = [Fraction(0)] * (1 << k)
    choice = [-1] * (1 << k)
    # subsets in order of popcount so that every S \ {v} is ready
    for s in sorted(range(1, 1 << k), key=lambda s: bin(s).count("1")):
        best = None
        for v in range(k):
            if s >> v & 1:
                rest = s & ~(1 << v)
                w = max(rho(bag(v, rest)), width[rest])
                if best is None or w < best:
                    best, choice[s] = w, v
        width[s] = best

    # recover the elimination ordering and build the decomposition
    elim = []
    s = full
    while s:
        v = choice[s]
        elim.append(v)
        s &= ~(1 << v)
    elim.reverse()
    pos = {v: i for i, v in enumerate(elim)}
    eliminated = 0
    bags = []
    for v in elim:
        bags.append(bag(v, eliminated))
        eliminated |= 1 << v
    tree = []
    for i, v in enumerate(elim):
        later = [pos[w] for w in range(k) if bags[i] >> w & 1 and w != v]
        if later:
            tree.append((i, min(later)))
        elif i != k - 1:
            # root of a primal component; hang it off the final bag
            tree.append((i, k - 1))
    td = _prune(
        [frozenset(order[j] for j in range(k) if b >> j & 1) for b in bags], tree
    )
    return width[full], td


def _prune(bags: list[frozenset[int]], tree: list[tuple[int, int]]) -> TreeDecomposition:
    """Merge bags contained in a tree neighbour; keeps the decomposition valid."""
    alive = set(range(len(bags)))
    nb = {i: set() for i in alive}
    for a, b in tree:
        nb[a].add(b)
        nb[b].add(a)
    changed = True
    while changed:
        changed = False
        for a in sorted(alive):
            target = next((b for b in sorted(nb[a]) if bags[a] <= bags[b]), None)
            if target is None:
                continue
            for c in nb[a]:
                if c != target:
                    nb[c].discard(a)
                    nb[c].add(target)
                    nb[target].add(c)
            nb[target].discard(a)
            del nb[a]
            alive.discard(a)
            changed = True
            break
    keep = sorted(alive)
    pos = {old: new for new, old in enumerate(keep)}
    edges = sorted({(min(pos[a], pos[b]), max(pos[a], pos[b])) for a in keep for b in nb[a]})
    return TreeDecomposition(tuple(bags[i] for i in keep), tuple(edges))


# ---------------------------------------------------------------- img and vertex cover


def img(d: Digraph) -> int:
    """Largest induced matching gadget of the condensation: source arcs
    (s_i, w_i) with distinct targets, no two targets reachable from one
    source."""
    cond = scc(d).condensation
    check(cond.n, get_limits().pattern, "img condensation size")
    sources = [v for v in range(cond.n) if not cond.in_adj[v]]
    targets = sorted({w for s in sources for w in cond.out_adj[s]})
    reach = [cond.reach([s]) for s in sources]
    conflict = {
        w: {x for r in reach if w in r for x in r if x in targets and x != w} for w in targets
    }
    best = 0

    def rec(i: int, chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) + len(targets) - i <= best:
            return
        if i == len(targets):
            best = len(chosen)
            return
        w = targets[i]
        if not any(c in conflict[w] for c in chosen):
            chosen.append(w)
            rec(i + 1, chosen)
            chosen.pop()
        rec(i + 1, chosen)

    rec(0, [])
    return best


def vertex_cover_number(g: UGraph | Digraph) -> int:
    if isinstance(g, Digraph):
        edges = sorted(g.underlying_edges())
        n = g.n
    else:
        edges = sorted(g.edges)
        n = g.n
    check(n, get_limits().pattern, "vertex_cover_number vertex count")
    best = n

    def rec(remaining: list[tuple[int, int]], size: int) -> None:
        nonlocal best
        if size >= best:
            return
        if not remaining:
            best = size
            return
        u, v = remaining[0]
        for pick in (u, v):
            rec([e for e in remaining if pick not in e], size + 1)

    rec(edges, 0)
    return best


# ---------------------------------------------------------------- report


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


@dataclass(frozen=True)
class InvariantReport:
    alpha: int
    alpha_star: Fraction
    rho_star_edge_cover: Fraction
    fractional_cover_number: Fraction
    fhtw: Fraction
    fhtw_witness: TreeDecomposition = field(repr=False)
    source_number: int
    img: int
    vertex_cover_number: int

    _FIELDS = (
        "alpha", "alpha_star", "rho_star_edge_cover", "fractional_cover_number",
        "fhtw", "source_number", "img", "vertex_cover_number",
    )

    def check(self) -> None:
        if self.alpha > self.alpha_star:
            raise DefectError("alpha exceeds alpha_star")
        if self.alpha_star != self.rho_star_edge_cover:
            raise DefectError("LP duality violated")
        if self.fhtw > self.fractional_cover_number:
            raise DefectError("fhtw exceeds the fractional cover number")

    def to_text(self) -> str:
        return "".join(f"{k}: {getattr(self, k)}\n" for k in self._FIELDS)

    def to_dict(self) -> dict:
        out = {k: _fmt(getattr(self, k)) if isinstance(getattr(self, k), Fraction)
               else getattr(self, k) for k in self._FIELDS}
        out["fhtw_witness"] = {
            "bags": [sorted(b) for b in self.fhtw_witness.bags],
            "tree": [list(e) for e in self.fhtw_witness.tree],
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def invariant_report(d: Digraph) -> InvariantReport:
    """All invariants of ``d``. alpha/alpha_star/rho_star_edge_cover refer to
    the contour; fhtw refers to the reachability hypergraph, the one the
    counting engine decomposes."""
    c = contour(d)
    a_star, _ = fractional_independence(c)
    rho, _ = fractional_edge_cover(c)
    width, td = fhtw(reachability_hypergraph(d))
    report = InvariantReport(
        alpha=independence_number(c),
        alpha_star=a_star,
        rho_star_edge_cover=rho,
        fractional_cover_number=max(Fraction(1), rho),
        fhtw=width,
        fhtw_witness=td,
        source_number=source_number(d),
        img=img(d),
        vertex_cover_number=vertex_cover_number(d),
    )
    report.check()
    return report
