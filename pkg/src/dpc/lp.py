"""Exact rational two-phase simplex (dense tableau, Bland's rule).

Only meant for the small covering/packing programs that appear in the
invariant computations, so the tableau is a plain list of Fraction rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DpcError, UnboundedError


class InfeasibleError(DpcError):
    pass


@dataclass(frozen=True)
class LpResult:
    value: Fraction
    x: tuple[Fraction, ...]


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    prow = tab[row]
    p = prow[col]
    if p != 1:
        prow[:] = [a / p for a in prow]
    for i, r in enumerate(tab):
        if i != row:
            f = r[col]
            if f:
                r[:] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = col


def _run(tab: list[list[Fraction]], basis: list[int], allowed: int) -> None:
    """Minimise the objective stored in the last row of ``tab``. The last
    row holds reduced costs, its last entry is minus the objective value.
    Only columns ``< allowed`` may enter."""
    obj = tab[-1]
    m = len(tab) - 1
    while True:
        # Bland: smallest index with negative reduced cost
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return
        best = None
        row = -1
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best, row = ratio, i
        if row < 0:
            raise UnboundedError("linear program is unbounded")
        _pivot(tab, basis, row, col)


def solve(
    c: Sequence,
    rows: Sequence[Sequence],
    senses: Sequence[str],
    rhs: Sequence,
    maximize: bool = False,
) -> LpResult:
    """Optimise ``c.x`` subject to ``rows[i].x (senses[i]) rhs[i]`` and
    ``x >= 0``. Senses are ``"<="``, ``">="`` or ``"="``."""
    nvar = len(c)
    cost = [Fraction(v) for v in c]
    if maximize:
        cost = [-v for v in cost]
    norm_rows: list[list[Fraction]] = []
    norm_sense: list[str] = []
    norm_rhs: list[Fraction] = []
    for row, s, b in zip(rows, senses, rhs, strict=True):
        if len(row) != nvar:
            raise DpcError("constraint row has wrong length")
        r = [Fraction(v) for v in row]
        b = Fraction(b)
        if s not in ("<=", ">=", "="):
            raise DpcError(f"unknown constraint sense {s!r}")
        if b < 0:
            r = [-v for v in r]
            b = -b
            s = {"<=": ">=", ">=": "<=", "=": "="}[s]
        norm_rows.append(r)
        norm_sense.append(s)
        norm_rhs.append(b)

    m = len(norm_rows)
    nslack = sum(1 for s in norm_sense if s != "=")
    nart = sum(1 for s in norm_sense if s != "<=")
    width = nvar + nslack + nart
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    si, ai = nvar, nvar + nslack
    art_cols = []
    for r, s, b in zip(norm_rows, norm_sense, norm_rhs):
        line = r + [Fraction(0)] * (nslack + nart) + [b]
        if s == "<=":
            line[si] = Fraction(1)
            basis.append(si)
            si += 1
        else:
            if s == ">=":
                line[si] = Fraction(-1)
                si += 1
            line[ai] = Fraction(1)
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        tab.append(line)

    if art_cols:
        phase1 = [Fraction(0)] * (width + 1)
        for j in art_cols:
            phase1[j] = Fraction(1)
        for i, bcol in enumerate(basis):
            if bcol in art_cols:
                phase1 = [a - b for a, b in zip(phase1, tab[i])]
        tab.append(phase1)
        _run(tab, basis, width)
        if tab[-1][-1] != 0:
            raise InfeasibleError("linear program is infeasible")
        tab.pop()
        # drive remaining (zero-level) artificials out of the basis
        first_art = nvar + nslack
        for i in range(m):
            if basis[i] >= first_art:
                col = next((j for j in range(first_art) if tab[i][j] != 0), None)
                if col is not None:
                    _pivot(tab, basis, i, col)
        keep = [i for i in range(m) if basis[i] < first_art]
        tab = [tab[i][:first_art] + [tab[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
        width = first_art

    obj = [Fraction(0)] * (width + 1)
    for j in range(nvar):
        obj[j] = cost[j]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            obj = [a - f * b for a, b in zip(obj, tab[i])]
    tab.append(obj)
    _run(tab, basis, width)

    x = [Fraction(0)] * nvar
    for i, bcol in enumerate(basis):
        if bcol < nvar:
            x[bcol] = tab[i][-1]
    value = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    return LpResult(Fraction(value), tuple(x))
