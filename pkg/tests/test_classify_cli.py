from __future__ import annotations

import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import delta, delta2, digraphs, h_arrow
from dpc import cli
from dpc.classify import classify, gen_host
from dpc.digraph import Digraph, format_digraph, parse_digraph, path
from dpc.gadgets import ColoredDigraph, format_colored, parse_colored


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = cli.run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


# ---------------------------------------------------------------- classify


def test_classify_examples():
    for k in (1, 2, 3):
        v = classify(delta(2, k))
        assert v.rho_star == k and v.source_number == k
        v = classify(delta(1, k))
        assert v.rho_star == 1 and v.source_number == k
    assert classify(h_arrow(2)).rho_star == 2
    v = classify(delta2())
    assert v.pattern_summary.acyclic and v.vc == 2
    assert v.to_dict()["rho_star"] == "1/1"


@given(digraphs(max_n=6), st.randoms(use_true_random=False))
def test_classify_depends_only_on_isomorphism_class(d, rnd):
    perm = list(range(d.n))
    rnd.shuffle(perm)
    assert classify(d.relabel(perm)) == classify(d)


def test_gen_host_contract():
    assert gen_host(5, 0, seed=1) == Digraph(5)
    assert gen_host(30, 3, seed=7) == gen_host(30, 3, seed=7)
    g = gen_host(100, 3, seed=2, acyclic=True)
    assert g.is_acyclic() and g.max_outdegree() <= 3
    assert all(u < v for u, v in g.arcs)
    g = gen_host(200, 2, seed=3, loops=True)
    assert g.max_outdegree() <= 2 and 0 < len(g.loops()) < 200
    with pytest.raises(ValueError):
        gen_host(0, 1, seed=0)


@given(st.integers(1, 40), st.integers(0, 4), st.integers(0, 10**6), st.booleans(), st.booleans())
def test_gen_host_outdegree_bound(n, d, seed, acyclic, loops):
    g = gen_host(n, d, seed, acyclic, loops)
    assert g.n == n and g.max_outdegree() <= d
    if acyclic:
        assert g.without_loops().is_acyclic()


# ---------------------------------------------------------------- cli


def test_analyze_text_and_json(files):
    p = files("d2.dg", format_digraph(delta2()))
    code, out, _ = run("analyze", p)
    assert code == 0 and "rho_star: 1\n" in out
    code, out, _ = run("analyze", p, "--json")
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["verdict"]["rho_star"] == "1/1"
    assert payload["invariants"]["alpha_star"] == "1/1"


def test_count_commands_and_verify(files):
    h = files("p.dg", format_digraph(path(3)))
    g = files("g.dg", format_digraph(gen_host(9, 2, seed=4, loops=True)))
    results = {}
    for kind in ("hom", "sub", "indsub"):
        code, out, _ = run("count", kind, h, g, "--verify")
        assert code == 0
        results[kind] = int(out)
        code, out, _ = run("count", kind, h, g, "--brute", "--threads", "2", "--json")
        assert code == 0 and json.loads(out)["count"] == str(results[kind])
    assert results["hom"] >= results["sub"] >= results["indsub"]


def test_verify_mismatch_exits_4(files, monkeypatch):
    h = files("p.dg", format_digraph(path(2)))
    g = files("g.dg", format_digraph(gen_host(6, 2, seed=1)))
    engine, brute = cli._ENGINES["hom"]
    monkeypatch.setitem(cli._ENGINES, "hom", (lambda a, b, t: engine(a, b, t) + 1, brute))
    code, _, err = run("count", "hom", h, g, "--verify")
    assert code == 4 and "defect" in err


def test_exit_codes(files):
    assert run("bogus")[0] == 1
    assert run()[0] == 1
    dup = files("dup.dg", "2 2\n0 1\n0 1\n")
    code, _, err = run("analyze", dup)
    assert code == 2 and "line 3" in err
    big = files("big.dg", format_digraph(path(9)))
    g = files("g.dg", format_digraph(gen_host(5, 1, seed=0)))
    assert run("count", "sub", big, g)[0] == 3
    assert run("analyze", files("missing.txt", "") + ".nope")[0] == 1


def test_limit_flag_raises_limits_with_warning(files):
    big = files("big.dg", format_digraph(path(8)))
    g = files("g.dg", format_digraph(gen_host(5, 1, seed=0)))
    code, out, err = run("--limit", "sub_pattern=8", "count", "sub", big, g)
    assert code == 0 and "warning" in err
    assert int(out) == 0


def test_basis_and_fhtw_commands(files):
    p = files("p.dg", format_digraph(path(3)))
    code, out, _ = run("basis", "sub", p)
    assert code == 0 and out.count("# coefficient") == 5
    code, out, _ = run("basis", "indsub", p, "--json")
    assert code == 0 and json.loads(out)["kind"] == "indsub"
    hg = files("k3.hg", "3 3\n2 0 1\n2 1 2\n2 0 2\n")
    code, out, _ = run("fhtw", hg)
    assert code == 0 and out.startswith("fhtw: 3/2\n")
    code, out, _ = run("fhtw", hg, "--json")
    assert json.loads(out)["fhtw"] == "3/2"


def test_interpolate_command(files):
    p = files("p.dg", format_digraph(path(2)))
    g = files("g.dg", format_digraph(delta2()))
    code, out, _ = run("interpolate", p, g, "--json")
    payload = json.loads(out)
    assert code == 0
    # support of the arc's basis: the arc itself and the loop vertex
    homs = {h["n"]: h["hom"] for h in payload["homs"]}
    assert homs == {2: "3", 1: "0"}
    assert payload["queries"] > 0


def test_gadget_command(files, tmp_path):
    host = ColoredDigraph(Digraph(3), (0, 0, 0))
    p = files("arc.dg", format_digraph(path(2)))
    c = files("host.cdg", format_colored(host))
    out_path = str(tmp_path / "out.cdg")
    code, out, _ = run("gadget", "contract", p, c, "--arc", "0", "1", "-o", out_path)
    assert code == 0 and out == "before: 3\nafter: 3\n"
    lifted = parse_colored(open(out_path).read())
    assert lifted.graph.m == 3
    code, out, _ = run("gadget", "sink", p, files("h1.cdg", format_colored(host)),
                       "--set", "1", "-o", out_path)
    assert code == 0 and out == "before: 3\nafter: 3\n"
    loop = files("loop.dg", "1 1\n0 0\n")
    code, out, _ = run("gadget", "loop", loop, c, "--vertex", "0", "-o", out_path, "--json")
    assert code == 0 and json.loads(out)["after"] == "3"
    assert run("gadget", "loop", loop, c, "-o", out_path)[0] == 1


def test_gen_host_command(files, tmp_path):
    code, out, _ = run("gen-host", "--n", "20", "--maxout", "3", "--seed", "5", "--acyclic")
    assert code == 0
    g = parse_digraph(out)
    assert g == gen_host(20, 3, 5, acyclic=True)
    target = str(tmp_path / "g.dg")
    assert run("gen-host", "--n", "7", "--maxout", "2", "-o", target)[0] == 0
    assert parse_digraph(open(target).read()).n == 7
