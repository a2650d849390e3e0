"""Colour-prescribed homomorphisms and host transformations that undo one
MR-minor step on the pattern side while preserving the count.

Each gadget takes a pattern H, the operation that turns H into a minor H',
and an H'-coloured host; it returns an H-coloured host with exactly as
many colour-prescribed homomorphisms from H as the input had from H'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .digraph import (
    Digraph,
    contract_arc,
    contraction_map,
    delete_loop,
    format_digraph,
    parse_digraph,
    scc,
    sink_delete,
)
from .errors import GraphOperationError, ParseError, SurjectivityError, VertexRangeError
from .homcount import brute_hom, count_hom


@dataclass(frozen=True)
class ColoredDigraph:
    graph: Digraph
    color: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "color", tuple(self.color))
        if len(self.color) != self.graph.n:
            raise GraphOperationError("colour map must cover every host vertex")

    def is_homomorphism_to(self, h: Digraph) -> bool:
        c = self.color
        return all(0 <= x < h.n for x in c) and all((c[a], c[b]) in h.arcs for a, b in self.graph.arcs)

    def is_surjective_onto(self, h: Digraph) -> bool:
        return set(self.color) == set(range(h.n))

    def require(self, h: Digraph) -> None:
        if not self.is_homomorphism_to(h):
            raise GraphOperationError("colouring is not a homomorphism to the pattern")
        if not self.is_surjective_onto(h):
            raise SurjectivityError("colouring is not surjective onto the pattern")

    def class_of(self, x: int) -> list[int]:
        return [w for w, c in enumerate(self.color) if c == x]


def count_cp_hom(h: Digraph, colored: ColoredDigraph) -> int:
    if any(not 0 <= x < h.n for x in colored.color):
        raise GraphOperationError("colour outside the pattern's vertex range")
    return count_hom(h, colored.graph, color=colored.color)


def brute_cp_hom(h: Digraph, colored: ColoredDigraph) -> int:
    return brute_hom(h, colored.graph, color=colored.color)


# ---------------------------------------------------------------- gadgets


def gadget_sink_deletion(h: Digraph, t: Iterable[int], colored: ColoredDigraph) -> ColoredDigraph:
    t = sorted(set(t))
    smaller = sink_delete(h, t)  # validates that t is a sink component
    colored.require(smaller)
    keep = [x for x in range(h.n) if x not in t]
    g = colored.graph
    color = [keep[c] for c in colored.color]
    host_of = {ti: g.n + i for i, ti in enumerate(t)}
    arcs = set(g.arcs)
    arcs |= {(host_of[a], host_of[b]) for a, b in h.arcs if a in host_of and b in host_of}
    for ti in t:
        sources = {x for x in h.in_adj[ti] if x not in host_of}
        arcs |= {(w, host_of[ti]) for w in range(g.n) if color[w] in sources}
    color += t
    return ColoredDigraph(Digraph(g.n + len(t), frozenset(arcs)), tuple(color))


def gadget_contraction(h: Digraph, arc: tuple[int, int], colored: ColoredDigraph) -> ColoredDigraph:
    """Split every vertex w coloured uv into w_u -> w_v and rewire.

    Besides the four neighbour cases, the merged vertex carries a loop in
    H/(u,v) whenever H has (v,u), (u,u) or (v,v); such a loop on w is
    passed on as (w_v, w_u), (w_u, w_u) or (w_v, w_v) respectively.
    """
    u, v = arc
    smaller = contract_arc(h, arc)  # validates the arc
    colored.require(smaller)
    f = contraction_map(h.n, u, v)
    uv = f[u]
    inv = {f[x]: x for x in range(h.n) if x not in (u, v)}
    g = colored.graph
    v_uv = colored.class_of(uv)
    others = [w for w in range(g.n) if colored.color[w] != uv]
    new_id = {w: i for i, w in enumerate(others)}
    base = len(others)
    wu = {w: base + 2 * i for i, w in enumerate(v_uv)}
    wv = {w: base + 2 * i + 1 for i, w in enumerate(v_uv)}
    color = [inv[colored.color[w]] for w in others]
    for _ in v_uv:
        color += [u, v]

    arcs = {(new_id[a], new_id[b]) for a, b in g.arcs if a in new_id and b in new_id}
    arcs |= {(wu[w], wv[w]) for w in v_uv}
    for w in v_uv:
        if (w, w) in g.arcs:
            if (v, u) in h.arcs:
                arcs.add((wv[w], wu[w]))
            if (u, u) in h.arcs:
                arcs.add((wu[w], wu[w]))
            if (v, v) in h.arcs:
                arcs.add((wv[w], wv[w]))
    for y in others:
        x = inv[colored.color[y]]
        for w in v_uv:
            if (y, w) in g.arcs:
                if (x, u) in h.arcs:
                    arcs.add((new_id[y], wu[w]))
                if (x, v) in h.arcs:
                    arcs.add((new_id[y], wv[w]))
            if (w, y) in g.arcs:
                if (u, x) in h.arcs:
                    arcs.add((wu[w], new_id[y]))
                if (v, x) in h.arcs:
                    arcs.add((wv[w], new_id[y]))
    return ColoredDigraph(Digraph(len(color), frozenset(arcs)), tuple(color))


def gadget_loop_deletion(h: Digraph, u: int, colored: ColoredDigraph) -> ColoredDigraph:
    smaller = delete_loop(h, u)
    colored.require(smaller)
    g = colored.graph
    arcs = g.arcs | {(w, w) for w in colored.class_of(u)}
    return ColoredDigraph(Digraph(g.n, frozenset(arcs)), colored.color)


def apply_minor_op(h: Digraph, op: tuple) -> Digraph:
    kind, arg = op
    if kind == "sink":
        return sink_delete(h, arg)
    if kind == "contract":
        return contract_arc(h, tuple(arg))
    if kind == "loop":
        return delete_loop(h, arg)
    raise GraphOperationError(f"unknown minor operation {kind!r}")


def lift_through_minors(h: Digraph, ops: Sequence[tuple], colored: ColoredDigraph) -> ColoredDigraph:
    """``ops`` turn h into a minor h'; ``colored`` is h'-coloured. Apply the
    gadgets in reverse to obtain an h-coloured host with the same count.
    Each op refers to vertex ids of the pattern it is applied to."""
    chain = [h]
    for op in ops:
        chain.append(apply_minor_op(chain[-1], op))
    colored.require(chain[-1])
    gadget = {"sink": gadget_sink_deletion, "contract": gadget_contraction, "loop": gadget_loop_deletion}
    for pattern, (kind, arg) in zip(reversed(chain[:-1]), reversed(ops)):
        colored = gadget[kind](pattern, tuple(arg) if kind == "contract" else arg, colored)
        colored.require(pattern)
    return colored


def sink_classes(h: Digraph) -> list[tuple[int, ...]]:
    dec = scc(h)
    return [dec.classes.blocks[i] for i in dec.sink_classes()]


# ---------------------------------------------------------------- .cdg format


def parse_colored(text: str) -> ColoredDigraph:
    lines = text.splitlines()
    try:
        cut = next(i for i, line in enumerate(lines) if line.strip() == "colors")
    except StopIteration:
        raise ParseError("missing 'colors' line") from None
    g = parse_digraph("\n".join(lines[:cut]))
    color: list[int | None] = [None] * g.n
    for lineno, raw in enumerate(lines[cut + 1:], start=cut + 2):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError("colour line must be 'v c'", lineno)
        try:
            w, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer colour line", lineno) from None
        if not 0 <= w < g.n:
            raise VertexRangeError(f"vertex {w} out of range", lineno)
        if color[w] is not None:
            raise ParseError(f"vertex {w} coloured twice", lineno)
        color[w] = c
    if any(c is None for c in color):
        raise ParseError("some host vertices have no colour")
    return ColoredDigraph(g, tuple(color))


def format_colored(colored: ColoredDigraph) -> str:
    body = "".join(f"{w} {c}\n" for w, c in enumerate(colored.color))
    return format_digraph(colored.graph) + "colors\n" + body
