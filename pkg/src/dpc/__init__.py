"""Exact counting of directed patterns in bounded-outdegree hosts."""

from .digraph import Digraph, Partition, parse_digraph, scc
from .homcount import count_hom
from .basis import count_indsub, count_sub, indsub_basis, sub_basis
from .classify import classify, gen_host

__all__ = [
    "Digraph",
    "Partition",
    "parse_digraph",
    "scc",
    "count_hom",
    "count_sub",
    "count_indsub",
    "sub_basis",
    "indsub_basis",
    "classify",
    "gen_host",
]
