"""Centroid criterion: exact convex-hull position of the monomial centroid."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .lp import INFEASIBLE, OPTIMAL, linprog, rank
from .ops import OneParamSubgroup, pairing
from .poly import DegreeProfile, Monomial, enumerate_monomials

WeightPoint = tuple[Fraction, ...]


class HullPosition(str, Enum):
    OUTSIDE = "Outside"
    BOUNDARY = "Boundary"
    INTERIOR = "Interior"


class Stability(str, Enum):
    UNSTABLE = "Unstable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    STABLE = "Stable"


def weight_point(m: Monomial) -> WeightPoint:
    return tuple(Fraction(e) for e in m.flat)


def centroid_point(profile: DegreeProfile) -> WeightPoint:
    mons = enumerate_monomials(profile)
    n = len(mons)
    return tuple(sum((Fraction(m.flat[i]) for m in mons), Fraction(0)) / n for i in range(profile.nvars))


def affine_rank(points: Sequence[WeightPoint]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def barycenter(points: Sequence[WeightPoint]) -> WeightPoint:
    n = len(points)
    return tuple(sum((p[i] for p in points), Fraction(0)) / n for i in range(len(points[0])))


def _in_hull(p: WeightPoint, S: Sequence[WeightPoint]) -> bool:
    dim = len(p)
    A = [[s[i] for s in S] for i in range(dim)] + [[1] * len(S)]
    b = list(p) + [1]
    return linprog([0] * len(S), A_eq=A, b_eq=b).status != INFEASIBLE


def hull_membership(
    p: Sequence, S: Sequence[Sequence], ambient: Sequence[Sequence] | None = None
) -> HullPosition:
    """Position of ``p`` relative to ``conv(S)``.

    Interior is relative to the affine hull of ``ambient`` (defaults to ``S``);
    a point set of lower affine rank than the ambient never has interior points.
    """
    if not S:
        raise ValueError("empty point set")
    p = tuple(Fraction(x) for x in p)
    pts = [tuple(Fraction(x) for x in s) for s in S]
    if any(len(s) != len(p) for s in pts):
        raise ValueError("dimension mismatch")
    amb = pts if ambient is None else [tuple(Fraction(x) for x in a) for a in ambient]
    if any(len(a) != len(p) for a in amb):
        raise ValueError("dimension mismatch")
    if not _in_hull(p, pts):
        return HullPosition.OUTSIDE
    if affine_rank(pts) < affine_rank(amb):
        return HullPosition.BOUNDARY
    b = barycenter(pts)
    if p == b:
        return HullPosition.INTERIOR
    # largest t with p + t(p - b) still in conv(S)
    direction = [pi - bi for pi, bi in zip(p, b)]
    n = len(pts)
    A = [[s[i] for s in pts] + [-direction[i]] for i in range(len(p))] + [[1] * n + [0]]
    rhs = list(p) + [1]
    res = linprog([0] * n + [1], A_eq=A, b_eq=rhs)
    # p itself is feasible, so the optimum exists and is >= 0
    assert res.status == OPTIMAL
    return HullPosition.INTERIOR if res.value > 0 else HullPosition.BOUNDARY


@dataclass(frozen=True)
class TorusVerdict:
    stability: Stability
    witness: OneParamSubgroup | None = None


def separating_subgroup(support: Iterable[Monomial], profile: DegreeProfile) -> OneParamSubgroup | None:
    """A subgroup pairing strictly positively with every monomial of ``support``, if one exists.

    Solves max t subject to <lambda, s> >= t, |lambda_v| <= 1, per-factor sums zero.
    """
    pts = [m.flat for m in support]
    N = profile.nvars
    # variables: lambda_0..lambda_{N-1}, t
    A_ub, b_ub = [], []
    for s in pts:
        A_ub.append([-e for e in s] + [1])
        b_ub.append(0)
    for v in range(N):
        row = [0] * (N + 1)
        row[v] = 1
        A_ub.append(row)
        b_ub.append(1)
        row = [0] * (N + 1)
        row[v] = -1
        A_ub.append(row)
        b_ub.append(1)
    A_eq, b_eq = [], []
    pos = 0
    for f in profile.factors:
        row = [0] * (N + 1)
        for v in range(pos, pos + f.variable_count):
            row[v] = 1
        pos += f.variable_count
        A_eq.append(row)
        b_eq.append(0)
    res = linprog([0] * N + [1], A_eq=A_eq, b_eq=b_eq, A_ub=A_ub, b_ub=b_ub, free=range(N + 1))
    if res.status != OPTIMAL or res.value <= 0:
        return None
    lam = res.x[:N]
    den = reduce(lcm, (x.denominator for x in lam), 1)
    ints = [int(x * den) for x in lam]
    g = reduce(gcd, ints)
    ints = [x // g for x in ints]
    parts, pos = [], 0
    for f in profile.factors:
        parts.append(tuple(ints[pos:pos + f.variable_count]))
        pos += f.variable_count
    witness = OneParamSubgroup(tuple(parts))
    assert all(pairing(witness, m) > 0 for m in support)
    return witness


def torus_verdict(support: Iterable[Monomial], profile: DegreeProfile) -> TorusVerdict:
    support = sorted(set(support), key=Monomial.sort_key)
    if not support:
        raise ValueError("empty support")
    for m in support:
        m.check(profile)
    ambient = [weight_point(m) for m in enumerate_monomials(profile)]
    pos = hull_membership(centroid_point(profile), [weight_point(m) for m in support], ambient)
    if pos == HullPosition.INTERIOR:
        return TorusVerdict(Stability.STABLE)
    if pos == HullPosition.BOUNDARY:
        return TorusVerdict(Stability.STRICTLY_SEMISTABLE)
    return TorusVerdict(Stability.UNSTABLE, separating_subgroup(support, profile))
