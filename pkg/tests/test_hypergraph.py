from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import delta, delta1, delta2, digraphs, h_arrow, hypergraphs
from dpc.digraph import Digraph, UGraph, directed_split, out_star, path, scc
from dpc.errors import DefectError, ParseError, UnboundedError, UncoverableVertexError
from dpc.hypergraph import (
    Hypergraph,
    TreeDecomposition,
    contour,
    fhtw,
    format_hypergraph,
    fractional_cover_number,
    fractional_edge_cover,
    fractional_independence,
    img,
    independence_number,
    invariant_report,
    parse_hypergraph,
    reachability_hypergraph,
    source_number,
    star_decomposition,
    vertex_cover_number,
)

K3 = Hypergraph.from_sets(3, [{0, 1}, {1, 2}, {0, 2}])


def brute_alpha(h: Hypergraph) -> int:
    vs = sorted(h.vertices)
    edges = h.edge_sets()
    for size in range(len(vs), 0, -1):
        for s in itertools.combinations(vs, size):
            if all(len(e & set(s)) <= 1 for e in edges):
                return size
    return 0


def brute_fhtw(h: Hypergraph) -> Fraction:
    """Minimum over all elimination orders of the largest bag cover."""
    vs = sorted(h.vertices)
    nb = {v: set() for v in vs}
    for e in h.edge_sets():
        for a in e:
            nb[a] |= e - {a}
    best = None
    for order in itertools.permutations(vs):
        g = {v: set(nb[v]) for v in vs}
        worst = Fraction(0)
        for v in order:
            bag = {v} | g[v]
            worst = max(worst, fractional_edge_cover(h, bag)[0])
            for a in g[v]:
                g[a] |= g[v] - {a}
                g[a].discard(v)
            del g[v]
        best = worst if best is None else min(best, worst)
    return best


# ---------------------------------------------------------------- construction


def test_reachability_and_contour_examples():
    assert reachability_hypergraph(delta2()).edge_sets() == [frozenset({0, 1, 2})]
    r = reachability_hypergraph(delta(1, 3))
    assert sorted(map(sorted, r.edge_sets())) == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
    c = contour(delta2())
    assert c.vertices == frozenset({1, 2}) and c.edge_sets() == [frozenset({1, 2})]
    c = contour(delta(1, 3))
    assert c.vertices == frozenset() and c.edges == () and len(c.empty_edges) == 3


def test_contour_of_split_clique_is_the_clique():
    c = contour(directed_split(UGraph.complete(3)))
    assert c.vertices == frozenset({0, 1, 2})
    assert sorted(map(sorted, c.edge_sets())) == [[0, 1], [0, 2], [1, 2]]


def test_star_decomposition_examples():
    td = star_decomposition(delta2())
    assert td.bags == (frozenset({1, 2}), frozenset({0, 1, 2}))
    td = star_decomposition(delta(1, 2))
    assert td.bags[0] == frozenset() and len(td.bags) == 3
    assert star_decomposition(Digraph(1)).bags == (frozenset({0}),)


@given(digraphs(max_n=7))
def test_star_decomposition_is_valid_and_narrow(d):
    r = reachability_hypergraph(d)
    td = star_decomposition(d)
    td.validate(r)
    assert td.width(r) <= fractional_cover_number(d)


def test_tree_decomposition_validation_catches_defects():
    h = Hypergraph.from_sets(3, [{0, 1}, {1, 2}])
    TreeDecomposition((frozenset({0, 1}), frozenset({1, 2})), ((0, 1),)).validate(h)
    with pytest.raises(DefectError):
        TreeDecomposition((frozenset({0, 1}),)).validate(h)
    with pytest.raises(DefectError):
        # vertex 1 appears in two bags that are not connected
        TreeDecomposition(
            (frozenset({0, 1}), frozenset({0}), frozenset({1, 2})), ((0, 1), (1, 2))
        ).validate(h)


# ---------------------------------------------------------------- LP values


def test_lp_examples():
    assert fractional_edge_cover(K3)[0] == Fraction(3, 2)
    assert fractional_independence(K3)[0] == Fraction(3, 2)
    single = Hypergraph.from_sets(3, [{0, 1, 2}])
    assert fractional_edge_cover(single)[0] == 1
    assert fractional_independence(single)[0] == 1
    two = Hypergraph.from_sets(4, [{0, 1}, {2, 3}])
    assert fractional_independence(two)[0] == 2
    assert fractional_edge_cover(contour(h_arrow(2)))[0] == 2


def test_uncoverable_vertices():
    h = Hypergraph.from_sets(3, [{0, 1}])
    with pytest.raises(UncoverableVertexError):
        fractional_edge_cover(h)
    with pytest.raises(UnboundedError):
        fractional_independence(h)
    with pytest.raises(UncoverableVertexError):
        fhtw(h)
    assert fractional_edge_cover(h, {0})[0] == 1


def test_integer_invariants():
    assert independence_number(K3) == 1
    assert independence_number(Hypergraph.from_sets(6, [{0, 1}, {2, 3}, {4, 5}])) == 3
    assert independence_number(contour(delta(2, 4))) == 4
    assert vertex_cover_number(UGraph.complete(3)) == 2
    assert vertex_cover_number(out_star(5)) == 1
    assert vertex_cover_number(UGraph(6, frozenset({(0, 1), (2, 3), (4, 5)}))) == 3


def test_cover_and_source_numbers():
    for k in range(1, 4):
        assert fractional_cover_number(delta(2, k)) == k
        assert fractional_cover_number(delta(1, k)) == 1
        assert source_number(delta(1, k)) == k
    assert fractional_cover_number(path(4)) == 1
    assert source_number(Digraph(1)) == 1
    assert source_number(directed_split(UGraph.complete(3))) == 3


def test_img_examples():
    assert img(delta(2, 3)) == 3
    assert img(path(2)) == 1
    assert img(delta2()) == 1


def test_fhtw_examples():
    assert fhtw(Hypergraph.from_sets(3, [{0, 1, 2}]))[0] == 1
    assert fhtw(K3)[0] == Fraction(3, 2)
    k4 = contour(directed_split(UGraph.complete(4)))
    assert fhtw(k4)[0] == 2
    assert fhtw(Hypergraph(frozenset(), ()))[0] == 0


@given(hypergraphs(max_n=6, max_m=5))
def test_fhtw_matches_elimination_order_search(h):
    width, td = fhtw(h)
    td.validate(h)
    assert td.width(h) == width
    assert width == brute_fhtw(h)


@given(hypergraphs(max_n=8, max_m=6))
def test_independence_matches_subset_search(h):
    assert independence_number(h) == brute_alpha(h)


@given(hypergraphs(max_n=8, max_m=6))
def test_lp_duality_and_sandwich(h):
    a_star, mu = fractional_independence(h)
    rho, gamma = fractional_edge_cover(h)
    assert a_star == rho
    assert independence_number(h) <= a_star
    for e in h.edge_sets():
        assert sum(mu[v] for v in e) <= 1
    for v in h.vertices:
        assert sum(gamma[lab] for lab, e in h.edges if v in e) >= 1


@given(digraphs(max_n=6))
def test_push_up_property(d):
    dec = scc(d)
    c = contour(d)
    if not c.vertices:
        return
    full, _ = fractional_independence(c)
    cond = dec.condensation
    for u, v in cond.arcs:
        if u in dec.source_classes:
            continue
        pinned = dec.classes.blocks[v]
        assert fractional_independence(c, zero=pinned)[0] == full


# ---------------------------------------------------------------- formats and reports


def test_hypergraph_format_roundtrip():
    text = "4 3\n2 0 1\n3 1 2 3\n0\n"
    h = parse_hypergraph(text)
    assert len(h.empty_edges) == 1
    assert parse_hypergraph(format_hypergraph(h)) == h
    with pytest.raises(ParseError):
        parse_hypergraph("3 1\n2 0\n")
    with pytest.raises(ParseError):
        parse_hypergraph("3 2\n1 0\n")
    with pytest.raises(ParseError):
        parse_hypergraph("3 1\n2 0 0\n")


def test_invariant_report_delta1_uses_floor():
    rep = invariant_report(delta1())
    assert rep.rho_star_edge_cover == 0
    assert rep.fractional_cover_number == 1
    assert rep.source_number == 1
    payload = json.loads(rep.to_json())
    assert payload["fractional_cover_number"] == "1/1"


def test_invariant_report_is_consistent_on_random_digraphs():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 7)
        arcs = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.3}
        rep = invariant_report(Digraph(n, frozenset(arcs)))
        rep.check()
        assert rep.img == rep.alpha
