"""Command line entry point ``dpc``.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 limit exceeded, 4 defect
(internal consistency check failed, including ``--verify`` mismatches).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import basis as basis_mod
from .classify import classify, gen_host
from .digraph import Digraph, format_digraph, read_digraph
from .errors import DefectError, DpcError, LimitExceeded, ParseError
from .gadgets import (
    count_cp_hom,
    format_colored,
    gadget_contraction,
    gadget_loop_deletion,
    gadget_sink_deletion,
    apply_minor_op,
    parse_colored,
)
from .homcount import brute_hom, brute_indsub, brute_sub, count_hom
from .hypergraph import fhtw, invariant_report, parse_hypergraph
from .interpolation import extract_homs
from .limits import Limits, get_limits, set_limits

SCHEMA = 1


class UsageError(DpcError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which we reserve
        raise UsageError(message)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit(out, payload: dict) -> None:
    out.write(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True) + "\n")


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------- commands


def cmd_analyze(args, out) -> int:
    h = read_digraph(args.pattern)
    verdict = classify(h)
    report = invariant_report(h)
    if args.json:
        _emit(out, {"verdict": verdict.to_dict(), "invariants": report.to_dict()})
        return 0
    out.write(f"n: {h.n}\nm: {h.m}\n")
    out.write(f"rho_star: {verdict.rho_star}\n")
    out.write(f"source_number: {verdict.source_number}\n")
    out.write(f"predicted_sub_exponent: {verdict.predicted_sub_exponent}\n")
    out.write(f"predicted_indsub_exponent: {verdict.predicted_indsub_exponent}\n")
    out.write(f"vc: {verdict.vc}\n")
    for key in ("alpha", "alpha_star", "rho_star_edge_cover", "fhtw", "img"):
        out.write(f"{key}: {getattr(report, key)}\n")
    out.write(f"criterion: {verdict.sub_criterion}\n")
    out.write(f"criterion: {verdict.indsub_criterion}\n")
    return 0


_ENGINES = {
    "hom": (lambda h, g, t: count_hom(h, g, threads=t), brute_hom),
    "sub": (lambda h, g, t: basis_mod.count_sub(h, g, lambda f, x: count_hom(f, x, threads=t)),
            brute_sub),
    "indsub": (lambda h, g, t: basis_mod.count_indsub(h, g, lambda f, x: count_hom(f, x, threads=t)),
               brute_indsub),
}


def cmd_count(args, out) -> int:
    h = read_digraph(args.pattern)
    g = read_digraph(args.host)
    engine, brute = _ENGINES[args.kind]
    if args.brute:
        value = brute(h, g)
    else:
        value = engine(h, g, args.threads)
    if args.verify:
        other = brute(h, g) if not args.brute else engine(h, g, args.threads)
        if other != value:
            raise DefectError(f"engine and brute force disagree: {value} vs {other}")
    if args.json:
        _emit(out, {"kind": args.kind, "count": str(value), "verified": bool(args.verify)})
    else:
        out.write(f"{value}\n")
    return 0


def cmd_basis(args, out) -> int:
    h = read_digraph(args.pattern)
    b = basis_mod.sub_basis(h) if args.kind == "sub" else basis_mod.indsub_basis(h)
    if args.json:
        _emit(out, {
            "kind": b.kind,
            "terms": [{"n": f.n, "arcs": sorted(map(list, f.arcs)), "coefficient": _frac(c)}
                      for f, c in b.terms],
        })
    else:
        out.write(b.format())
    return 0


def cmd_fhtw(args, out) -> int:
    hg = parse_hypergraph(_read_text(args.hypergraph))
    width, td = fhtw(hg)
    if args.json:
        _emit(out, {"fhtw": _frac(width), "bags": [sorted(b) for b in td.bags],
                    "tree": [list(e) for e in td.tree]})
        return 0
    out.write(f"fhtw: {width}\n")
    for i, b in enumerate(td.bags):
        out.write(f"bag {i}: {' '.join(map(str, sorted(b)))}\n")
    for a, b in td.tree:
        out.write(f"tree {a} {b}\n")
    return 0


def cmd_interpolate(args, out) -> int:
    h = read_digraph(args.pattern)
    g = read_digraph(args.host)
    saved = get_limits()
    set_limits(dataclasses.replace(saved, oracle_budget=max(saved.oracle_budget, 10**12)))
    sink: list = []
    try:
        result = extract_homs(g, basis_mod.sub_basis(h), lambda x: brute_sub(h, x), sink)
    finally:
        set_limits(saved)
    trace = sink[-1]
    sizes = [n for n, _ in trace.hosts.query_log]
    degs = [d for _, d in trace.hosts.query_log]
    payload = {
        "homs": [{"n": f.n, "arcs": sorted(map(list, f.arcs)), "hom": str(v)} for f, v in result],
        "queries": len(sizes),
        "max_query_size": max(sizes, default=0),
        "max_query_outdegree": max(degs, default=0),
        "host_outdegree": g.max_outdegree(),
    }
    if args.json:
        _emit(out, payload)
        return 0
    for f, v in result:
        out.write(f"hom {v} <- {f.n} {sorted(f.arcs)}\n")
    for key in ("queries", "max_query_size", "max_query_outdegree", "host_outdegree"):
        out.write(f"{key}: {payload[key]}\n")
    return 0


def cmd_gadget(args, out) -> int:
    h = read_digraph(args.pattern)
    colored = parse_colored(_read_text(args.host))
    if args.op == "sink":
        if not args.set:
            raise UsageError("gadget sink needs --set")
        arg = tuple(int(x) for x in args.set.split(","))
        result = gadget_sink_deletion(h, arg, colored)
        smaller = apply_minor_op(h, ("sink", arg))
    elif args.op == "contract":
        if not args.arc:
            raise UsageError("gadget contract needs --arc U V")
        arg = tuple(args.arc)
        result = gadget_contraction(h, arg, colored)
        smaller = apply_minor_op(h, ("contract", arg))
    else:
        if args.vertex is None:
            raise UsageError("gadget loop needs --vertex U")
        result = gadget_loop_deletion(h, args.vertex, colored)
        smaller = apply_minor_op(h, ("loop", args.vertex))
    before = count_cp_hom(smaller, colored)
    after = count_cp_hom(h, result)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(format_colored(result))
    if before != after:
        raise DefectError(f"gadget changed the count: {before} -> {after}")
    if args.json:
        _emit(out, {"before": str(before), "after": str(after)})
    else:
        out.write(f"before: {before}\nafter: {after}\n")
    return 0


def cmd_gen_host(args, out) -> int:
    g = gen_host(args.n, args.maxout, args.seed, args.acyclic, args.loops)
    text = format_digraph(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dpc", description="Directed pattern counting in bounded-outdegree hosts")
    p.add_argument("--limit", action="append", default=[], metavar="KEY=VALUE",
                   help="raise a size limit (same keys as DPC_LIMITS)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    a = sub.add_parser("analyze", help="invariants and verdict of a pattern")
    a.add_argument("pattern")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("count", help="count hom / sub / indsub")
    c.add_argument("kind", choices=["hom", "sub", "indsub"])
    c.add_argument("pattern")
    c.add_argument("host")
    c.add_argument("--brute", action="store_true")
    c.add_argument("--verify", action="store_true")
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count)

    b = sub.add_parser("basis", help="homomorphism basis of a pattern")
    b.add_argument("kind", choices=["sub", "indsub"])
    b.add_argument("pattern")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_basis)

    f = sub.add_parser("fhtw", help="fractional hypertree width of a .hg file")
    f.add_argument("hypergraph")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fhtw)

    i = sub.add_parser("interpolate", help="recover hom counts from subgraph counts")
    i.add_argument("pattern")
    i.add_argument("host")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_interpolate)

    g = sub.add_parser("gadget", help="lift a coloured host through one minor step")
    g.add_argument("op", choices=["sink", "contract", "loop"])
    g.add_argument("pattern")
    g.add_argument("host")
    g.add_argument("--set", help="comma separated sink component (sink)")
    g.add_argument("--arc", type=int, nargs=2, metavar=("U", "V"), help="arc to contract")
    g.add_argument("--vertex", type=int, help="loop vertex (loop)")
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gadget)

    h = sub.add_parser("gen-host", help="random bounded-outdegree host")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--maxout", type=int, required=True)
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--acyclic", action="store_true")
    h.add_argument("--loops", action="store_true")
    h.add_argument("-o", "--output")
    h.set_defaults(func=cmd_gen_host)
    return p


def _apply_limit_flags(items: Sequence[str], err) -> None:
    if not items:
        return
    limits = Limits.from_env(",".join(items))
    base = get_limits()
    merged = dataclasses.replace(
        base,
        **{f.name: getattr(limits, f.name) for f in dataclasses.fields(Limits)
           if any(item.split("=")[0].strip() == f.name for item in items)},
    )
    err.write("warning: raised limits can make exponential steps run for a very long time\n")
    set_limits(merged)


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    saved = get_limits()
    try:
        args = build_parser().parse_args(list(argv))
        _apply_limit_flags(args.limit, err)
        return args.func(args, out)
    except ParseError as e:
        err.write(f"parse error: {e}\n")
        return 2
    except LimitExceeded as e:
        err.write(f"limit exceeded: {e}\n")
        return 3
    except DefectError as e:
        err.write(f"defect: {e}\n")
        return 4
    except (DpcError, OSError, ValueError) as e:
        err.write(f"error: {e}\n")
        return 1
    finally:
        set_limits(saved)


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
