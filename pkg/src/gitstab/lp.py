"""Exact rational linear programming: dense two-phase simplex with Bland's rule."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    prow = tab[row]
    inv = 1 / prow[col]
    if inv != 1:
        tab[row] = prow = [v * inv for v in prow]
    for i, r in enumerate(tab):
        if i != row:
            f = r[col]
            if f:
                tab[i] = [a - f * b if b else a for a, b in zip(r, prow)]
    basis[row] = col


def _simplex(tab: list[list[Fraction]], basis: list[int], ncols: int, allowed: Sequence[bool]) -> str:
    """Maximize the objective stored in the last row as reduced costs ``z_j - c_j``."""
    obj = tab[-1]
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        best = None
        row = None
        for i in range(len(tab) - 1):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best, row = ratio, i
        if row is None:
            return UNBOUNDED
        _pivot(tab, basis, row, col)


def linprog(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub`` and ``x >= 0``.

    Variables listed in ``free`` are unrestricted in sign.
    """
    n = len(c)
    free = sorted(set(free))
    # column layout: x (n), negative parts of free vars, slacks, artificials
    neg_of = {j: n + k for k, j in enumerate(free)}
    nx = n + len(free)
    n_ub = len(A_ub)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, (a, b) in enumerate(list(zip(A_ub, b_ub)) + list(zip(A_eq, b_eq))):
        row = [Fraction(0)] * (nx + n_ub)
        for j, v in enumerate(a):
            v = Fraction(v)
            row[j] = v
            if j in neg_of:
                row[neg_of[j]] = -v
        if k < n_ub:
            row[nx + k] = Fraction(1)
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    m = len(rows)
    nreal = nx + n_ub
    ncols = nreal + m
    tab = []
    for i, row in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs[i]])
    basis = [nreal + i for i in range(m)]

    # phase one: maximize -(sum of artificials)
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(nreal):
            obj[j] -= tab[i][j]
        obj[-1] -= tab[i][-1]
    tab.append(obj)
    _simplex(tab, basis, ncols, [True] * ncols)
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab) - 1:
        if basis[i] >= nreal:
            col = next((j for j in range(nreal) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, col)
        i += 1

    cost = [Fraction(0)] * nreal
    for j, v in enumerate(c):
        cost[j] = Fraction(v)
        if j in neg_of:
            cost[neg_of[j]] = -Fraction(v)
    obj = [-v for v in cost] + [Fraction(0)] * m + [Fraction(0)]
    for i, bj in enumerate(basis):
        cb = cost[bj] if bj < nreal else Fraction(0)
        if cb:
            obj = [o + cb * t for o, t in zip(obj, tab[i])]
    tab[-1] = obj
    allowed = [True] * nreal + [False] * m
    status = _simplex(tab, basis, ncols, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    values = [Fraction(0)] * ncols
    for i, bj in enumerate(basis):
        values[bj] = tab[i][-1]
    x = [values[j] - (values[neg_of[j]] if j in neg_of else 0) for j in range(n)]
    return LPResult(OPTIMAL, tuple(x), tab[-1][-1])


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    mat = [[Fraction(v) for v in r] for r in rows]
    if not mat:
        return 0
    r = 0
    ncols = len(mat[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r]
        for i in range(r + 1, len(mat)):
            f = mat[i][col] / p[col]
            if f:
                mat[i] = [a - f * b for a, b in zip(mat[i], p)]
        r += 1
        if r == len(mat):
            break
    return r
