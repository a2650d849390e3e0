"""Recovering individual homomorphism counts from an oracle for a fixed
linear combination of them.

For pairwise non-isomorphic F_1..F_k the maps phi_i = #Hom(F_i -> .) are
distinct multiplicative characters of the tensor-product semigroup, so the
coefficients of phi = sum a_i phi_i can be peeled off one at a time:

* k = 1: a_1 = phi(F_1) / phi_1(F_1).
* otherwise pick W with phi_1(W) != phi_k(W); the function
  g -> phi(W x g) - phi_k(W) phi(g) no longer involves phi_k and has
  first coefficient a_1 (phi_1(W) - phi_k(W)). Recurse for that, then
  recurse on phi - a_1 phi_1 over F_2..F_k.

Which hosts get queried depends only on the F_i.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .basis import BasisExpansion, sub_basis
from .digraph import Digraph, Partition, is_isomorphic, quotient, set_partitions, tensor
from .errors import DefectError, DpcError, GraphOperationError
from .homcount import brute_hom, brute_sub, count_hom
from .limits import get_limits, set_limits


@dataclass
class LinearHomOracle:
    support: tuple[Digraph, ...]
    evaluate: Callable[[Digraph], Fraction]
    query_log: list[tuple[int, int]] = field(default_factory=list)
    query_hosts: list[Digraph] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.support = tuple(self.support)
        for a, b in itertools.combinations(self.support, 2):
            if is_isomorphic(a, b):
                raise DpcError("oracle support must be pairwise non-isomorphic")

    def __call__(self, g: Digraph) -> Fraction:
        self.query_log.append((g.n, g.max_outdegree()))
        self.query_hosts.append(g)
        return Fraction(self.evaluate(g))


def planted_oracle(support: Sequence[Digraph], coeffs: Sequence) -> LinearHomOracle:
    """Oracle for sum coeffs[i] * #Hom(support[i] -> g)."""
    pairs = [(f, Fraction(c)) for f, c in zip(support, coeffs, strict=True)]
    return LinearHomOracle(
        tuple(support), lambda g: sum((c * count_hom(f, g) for f, c in pairs), Fraction(0))
    )


def distinguisher(f1: Digraph, f2: Digraph) -> Digraph:
    """An induced subgraph W of f1 or f2 with #Hom(f1 -> W) != #Hom(f2 -> W),
    preferring small outdegree, then few vertices.

    Such a W always exists: if all induced subgraphs of W gave equal counts,
    inclusion-exclusion over vertex subsets would give equal numbers of
    vertex-surjective homomorphisms into W, and taking W = f1 and W = f2
    yields surjections both ways, forcing an isomorphism.
    """
    limit = get_limits().small_graph
    for g in (f1, f2):
        if g.n > limit:
            raise DpcError(f"distinguisher input exceeds {limit} vertices")
    if is_isomorphic(f1, f2):
        raise DpcError("distinguisher called on isomorphic digraphs")
    # sparsest candidates first: W ends up as a tensor factor of oracle
    # hosts, and host outdegrees multiply across factors
    candidates = [
        g.induced(subset)
        for size in range(max(f1.n, f2.n) + 1)
        for g in (f1, f2)
        for subset in itertools.combinations(range(g.n), size)
    ]
    candidates.sort(key=lambda w: (w.max_outdegree(), w.n))
    for w in candidates:
        if brute_hom(f1, w) != brute_hom(f2, w):
            return w
    raise DefectError("no induced subgraph distinguishes two non-isomorphic digraphs")


def _interpolate(phi: Callable[[Digraph], Fraction], support: list[Digraph]) -> list[Fraction]:
    f1 = support[0]
    if len(support) == 1:
        return [phi(f1) / count_hom(f1, f1)]
    fk = support[-1]
    w = distinguisher(f1, fk)
    h1, hk = count_hom(f1, w), count_hom(fk, w)

    def reduced(g: Digraph) -> Fraction:
        return phi(tensor(w, g)) - hk * phi(g)

    a1 = _interpolate(reduced, support[:-1])[0] / (h1 - hk)

    def rest(g: Digraph) -> Fraction:
        return phi(g) - a1 * count_hom(f1, g)

    return [a1] + _interpolate(rest, support[1:])


def dedekind_interpolate(oracle: LinearHomOracle) -> dict[Digraph, Fraction]:
    if not oracle.support:
        raise DpcError("oracle support is empty")
    coeffs = _interpolate(oracle, list(oracle.support))
    return dict(zip(oracle.support, coeffs))


@dataclass
class ExtractionTrace:
    """``queries`` logs the graphs H asked for by the interpolation,
    ``hosts`` the tensor products g_prime x H actually sent out."""

    queries: LinearHomOracle
    hosts: LinearHomOracle

    def outdegree_pairs(self) -> list[tuple[int, int]]:
        return [(h[1], q[1]) for q, h in zip(self.queries.query_log, self.hosts.query_log)]


def extract_homs(
    g_prime: Digraph,
    iota: BasisExpansion,
    combined_oracle: Callable[[Digraph], int | Fraction],
    trace_sink: list | None = None,
) -> list[tuple[Digraph, int]]:
    """#Hom(F -> g_prime) for every F in the support of ``iota``, using only
    ``combined_oracle`` (g -> sum iota(F) #Hom(F -> g)) on tensor hosts."""
    support = tuple(f for f, _ in iota.terms)
    weight = {f: c for f, c in iota.terms}
    if any(c == 0 for c in weight.values()):
        raise DpcError("zero coefficient in the basis")
    d = g_prime.max_outdegree()
    for f in support:
        # multiplicativity spot check behind the whole reduction
        if count_hom(f, tensor(g_prime, f)) != count_hom(f, g_prime) * count_hom(f, f):
            raise DefectError("hom counts are not multiplicative over the tensor product")

    hosts = LinearHomOracle(support, combined_oracle)

    def answer(h: Digraph) -> Fraction:
        host = tensor(g_prime, h)
        if host.max_outdegree() > d * h.max_outdegree():
            raise DefectError("tensor query exceeds its outdegree bound")
        return hosts(host)

    queries = LinearHomOracle(support, answer)
    if trace_sink is not None:
        trace_sink.append(ExtractionTrace(queries, hosts))
    recovered = dedekind_interpolate(queries)
    out = []
    for f in support:
        value = recovered[f] / weight[f]
        if value.denominator != 1 or value < 0:
            raise DefectError(f"recovered hom count {value} is not a nonnegative integer")
        out.append((f, value.numerator))
    return out


def find_quotient(h: Digraph, h_prime: Digraph) -> Partition | None:
    for sigma in set_partitions(h.n):
        if len(sigma) == h_prime.n and is_isomorphic(quotient(h, sigma), h_prime):
            return sigma
    return None


def hom_from_sub_demo(
    h_prime: Digraph,
    h: Digraph,
    g_prime: Digraph,
    sigma: Partition | None = None,
    trace_sink: list | None = None,
) -> int:
    """#Hom(h_prime -> g_prime) computed from brute-force subgraph counts of
    ``h`` alone; ``h_prime`` must be a quotient of ``h``."""
    if sigma is None:
        sigma = find_quotient(h, h_prime)
        if sigma is None:
            raise GraphOperationError("h_prime is not a quotient of h")
    elif not is_isomorphic(quotient(h, sigma), h_prime):
        raise GraphOperationError("partition does not yield h_prime")
    basis = sub_basis(h)
    sink: list = [] if trace_sink is None else trace_sink
    # tensor hosts grow quickly, but the injective search prunes along
    # arcs, so the plain n^k budget is far too pessimistic here
    saved = get_limits()
    set_limits(dataclasses.replace(saved, oracle_budget=max(saved.oracle_budget, 10**12)))
    try:
        result = extract_homs(g_prime, basis, lambda g: brute_sub(h, g), sink)
    finally:
        set_limits(saved)
    d = g_prime.max_outdegree()
    if any(host > d * query for host, query in sink[-1].outdegree_pairs()):
        raise DefectError("oracle host outdegree out of bounds")
    for f, value in result:
        if is_isomorphic(f, h_prime):
            return value
    raise DefectError("quotient missing from the subgraph basis")
