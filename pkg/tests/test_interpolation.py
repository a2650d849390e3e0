from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from conftest import delta1, delta2, random_digraph
from dpc.basis import BasisExpansion, sub_basis
from dpc.classify import gen_host
from dpc.digraph import Digraph, enumerate_digraphs, is_isomorphic, loop_vertex, path
from dpc.errors import DpcError, GraphOperationError
from dpc.homcount import brute_hom, brute_sub, count_hom
from dpc.interpolation import (
    LinearHomOracle,
    dedekind_interpolate,
    distinguisher,
    extract_homs,
    hom_from_sub_demo,
    planted_oracle,
)

ARC = path(2)
VERTEX = Digraph(1)


def test_distinguisher_examples():
    w = distinguisher(VERTEX, ARC)
    assert brute_hom(VERTEX, w) != brute_hom(ARC, w)
    w = distinguisher(delta1(), delta2())
    assert brute_hom(delta1(), w) != brute_hom(delta2(), w)
    with pytest.raises(DpcError):
        distinguisher(ARC, ARC.relabel([1, 0]))


def test_distinguishers_exist_for_all_small_pairs():
    graphs = [d for n in range(1, 4) for d in enumerate_digraphs(n, loops=True)]
    rng = random.Random(0)
    for a, b in rng.sample(list(itertools.combinations(graphs, 2)), 300):
        w = distinguisher(a, b)
        assert brute_hom(a, w) != brute_hom(b, w)


def test_interpolation_examples():
    got = dedekind_interpolate(LinearHomOracle((VERTEX,), lambda g: 2 * g.n))
    assert got == {VERTEX: 2}
    oracle = LinearHomOracle((VERTEX, ARC), lambda g: 3 * g.n + 5 * brute_hom(ARC, g))
    assert dedekind_interpolate(oracle) == {VERTEX: 3, ARC: 5}


def test_oracle_support_must_be_non_isomorphic():
    with pytest.raises(DpcError):
        LinearHomOracle((ARC, ARC.relabel([1, 0])), lambda g: 0)
    with pytest.raises(DpcError):
        dedekind_interpolate(LinearHomOracle((), lambda g: 0))


def test_sub_basis_coefficients_are_recovered():
    b = sub_basis(delta1())
    support = [f for f, _ in b.terms]
    oracle = planted_oracle(support, [c for _, c in b.terms])
    got = dedekind_interpolate(oracle)
    assert got == {f: c for f, c in b.terms}
    rng = random.Random(1)
    for _ in range(10):
        g = random_digraph(rng, rng.randint(1, 6), 0.4, loops=True)
        assert sum(got[f] * count_hom(f, g) for f in support) == brute_sub(delta1(), g)


def test_planted_recovery_and_query_independence():
    graphs = [d for n in range(1, 4) for d in enumerate_digraphs(n, loops=True)]
    rng = random.Random(5)
    for _ in range(25):
        support = rng.sample(graphs, rng.randint(1, 4))
        a = [Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for _ in support]
        b = [Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for _ in support]
        oa, ob = planted_oracle(support, a), planted_oracle(support, b)
        assert dedekind_interpolate(oa) == dict(zip(support, a))
        assert dedekind_interpolate(ob) == dict(zip(support, b))
        assert oa.query_hosts == ob.query_hosts


def test_extract_homs_examples():
    got = dict(extract_homs(delta2(), sub_basis(ARC), lambda g: brute_sub(ARC, g)))
    assert got[ARC] == 3 and got[loop_vertex()] == 0
    got = extract_homs(delta1(), sub_basis(delta1()), lambda g: brute_sub(delta1(), g))
    assert any(is_isomorphic(f, delta1()) and v == 3 for f, v in got)


def test_extract_homs_with_single_term_asks_once():
    b = BasisExpansion("sub", ((VERTEX, Fraction(1)),))
    sink: list = []
    got = extract_homs(gen_host(5, 2, 1), b, lambda g: g.n, sink)
    assert got == [(VERTEX, 5)]
    assert len(sink[0].hosts.query_log) == 1


def test_extract_homs_matches_direct_counts():
    rng = random.Random(8)
    for _ in range(10):
        h = random_digraph(rng, 3, 0.4)
        g = gen_host(rng.randint(2, 4), 2, rng.randrange(100), loops=True)
        got = extract_homs(g, sub_basis(h), sub_basis(h).evaluate)
        for f, v in got:
            assert v == count_hom(f, g)


def test_hom_from_sub_demo_examples():
    two_loops = Digraph(3, frozenset({(0, 0), (1, 1), (0, 2)}))
    assert hom_from_sub_demo(loop_vertex(), ARC, two_loops) == 2
    assert hom_from_sub_demo(delta1(), delta1(), delta1()) == 3
    with pytest.raises(GraphOperationError):
        hom_from_sub_demo(delta2(), ARC, delta1())


def test_demo_hosts_respect_query_times_host_outdegree():
    sink: list = []
    g = gen_host(3, 2, seed=4)
    hom_from_sub_demo(path(3), path(3), g, trace_sink=sink)
    d = g.max_outdegree()
    assert all(host <= d * q for host, q in sink[-1].outdegree_pairs())
