"""Size limits guarding the exponential parts of the pipeline.

Defaults can be raised via the ``DPC_LIMITS`` environment variable, e.g.
``DPC_LIMITS="sub_pattern=8,fhtw=14"``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import DpcError, LimitExceeded


@dataclass(frozen=True)
class Limits:
    small_graph: int = 10  # canonical_form / automorphism_count
    sub_pattern: int = 7  # sub_basis, Bell(7) = 877
    indsub_pattern: int = 5
    arc_supergraph_budget: int = 14  # n(n-1) - |E| free arc slots
    fhtw: int = 12
    independence: int = 20
    pattern: int = 10  # img, vertex cover, hom pattern
    oracle_budget: int = 10**7  # brute-force map enumeration cap

    @classmethod
    def from_env(cls, env: str | None = None) -> "Limits":
        raw = os.environ.get("DPC_LIMITS", "") if env is None else env
        overrides = {}
        names = {f.name for f in dataclasses.fields(cls)}
        for item in filter(None, (s.strip() for s in raw.split(","))):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in names:
                raise DpcError(f"unknown limit {key!r} in DPC_LIMITS")
            try:
                overrides[key] = int(value)
            except ValueError:
                raise DpcError(f"limit {key!r} needs an integer, got {value!r}") from None
        return cls(**overrides)


_current = Limits.from_env()


def get_limits() -> Limits:
    return _current


def set_limits(limits: Limits) -> None:
    global _current
    _current = limits


def check(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise LimitExceeded(f"{what}: {value} exceeds limit {limit} (raise via DPC_LIMITS)")
