"""Local singularity analysis of explicit divisors at rational points.

Everything is computed on the germ ``g(t) = f(p + t)`` in an affine chart.
Milnor numbers use the colength of ``J + m^k`` in the polynomial ring at the
origin; when the colengths for ``k - 1`` and ``k`` agree, Nakayama gives
``m^(k-1) inside J`` in the local ring, so the value is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Sequence

from .affine import Poly, local_poly
from .lp import rank
from .poly import DegreeProfile, MultiPoly, check_chart

NOT_STABILIZED = "NotStabilized"
INFINITE = "Infinite"

DEFAULT_TRUNCATION = 8
RETRY_TRUNCATIONS = (12,)


class NotSingularError(ValueError):
    pass


class ChartEscapeError(ValueError):
    pass


@dataclass(frozen=True)
class ChartPoint:
    chart: tuple[int, ...]
    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "chart", tuple(self.chart))
        object.__setattr__(self, "coordinates", tuple(Fraction(c) for c in self.coordinates))

    def check(self, profile: DegreeProfile) -> None:
        check_chart(profile, self.chart)
        if len(self.coordinates) != profile.dim:
            raise ValueError(f"point has {len(self.coordinates)} coordinates, chart dimension is {profile.dim}")

    @classmethod
    def from_homogeneous(cls, profile: DegreeProfile, point: Sequence[Sequence]) -> "ChartPoint":
        """Chart point for homogeneous coordinates, dehomogenising at the last nonzero entry of each factor."""
        if len(point) != len(profile.factors):
            raise ValueError("point does not match the profile")
        chart, coords = [], []
        for part, fac in zip(point, profile.factors):
            part = [Fraction(x) for x in part]
            if len(part) != fac.variable_count:
                raise ValueError("point does not match the profile")
            nz = [j for j, x in enumerate(part) if x != 0]
            if not nz:
                raise ValueError("zero vector is not a projective point")
            k = nz[-1]
            if not fac.unweighted and part[k] != 1:
                raise ValueError("weighted factors need the chart coordinate equal to 1")
            chart.append(k)
            coords.extend(x / part[k] for j, x in enumerate(part) if j != k)
        return cls(tuple(chart), tuple(coords))

    def homogeneous(self, profile: DegreeProfile) -> list[list[Fraction]]:
        out, pos = [], 0
        for k, fac in zip(self.chart, profile.factors):
            rest = list(self.coordinates[pos:pos + fac.dim])
            pos += fac.dim
            out.append(rest[:k] + [Fraction(1)] + rest[k:])
        return out

    def to_json(self, profile: DegreeProfile) -> list[list[str]]:
        return [[_fmt(x) for x in part] for part in self.homogeneous(profile)]


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def germ(f: MultiPoly, p: ChartPoint) -> Poly:
    p.check(f.profile)
    return local_poly(f, p.chart).shift(p.coordinates)


def germ_is_singular(g: Poly) -> bool:
    return g.min_degree() is None or g.min_degree() >= 2


def is_singular_at(f: MultiPoly, p: ChartPoint) -> bool:
    return germ_is_singular(germ(f, p))


def germ_multiplicity(g: Poly) -> int | None:
    return g.min_degree()


def germ_hessian(g: Poly) -> list[list[Fraction]]:
    n = g.nvars
    h = [[Fraction(0)] * n for _ in range(n)]
    for k, v in g.homogeneous_part(2).terms.items():
        idx = [i for i, e in enumerate(k) for _ in range(e)]
        i, j = idx
        if i == j:
            h[i][i] += 2 * v
        else:
            h[i][j] += v
            h[j][i] += v
    return h


def germ_corank(g: Poly) -> int:
    if not germ_is_singular(g):
        raise NotSingularError("the point is not singular")
    return g.nvars - rank(germ_hessian(g))


def hessian_corank(f: MultiPoly, p: ChartPoint) -> int:
    g = germ(f, p)
    if not germ_is_singular(g):
        raise NotSingularError("the point is not singular")
    return germ_corank(g)


def _monomials_below(nvars: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(k):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _local_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), tuple(-x for x in e))


def _integer_rows(g: Poly) -> dict[tuple[int, ...], int]:
    den = reduce(lcm, (c.denominator for c in g.terms.values()), 1)
    return {e: int(c * den) for e, c in g.terms.items()}


def _primitive(row: dict[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    cont = reduce(gcd, row.values())
    return row if cont == 1 else {e: v // cont for e, v in row.items()}


def colength(generators: Sequence[Poly], nvars: int, k: int) -> int:
    """``dim Q[t] / (I + m^k)`` for the ideal generated by ``generators``.

    Fraction-free elimination on the products ``t^a * g`` truncated at degree
    ``k``, pivoting on the lowest monomial.  Rows are fed highest order first,
    which keeps fill-in small.
    """
    mons = _monomials_below(nvars, k)
    gens = []
    for g in generators:
        g = g.truncate(k)
        if not g.is_zero():
            gens.append((_integer_rows(g), g.min_degree()))
    jobs = sorted(
        ((sum(a) + order, i, a) for i, (_, order) in enumerate(gens) for a in mons if sum(a) + order < k),
        key=lambda t: (-t[0], t[1], t[2]),
    )
    pivots: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for _, i, a in jobs:
        row = {}
        for e, c in gens[i][0].items():
            key = tuple(x + y for x, y in zip(a, e))
            if sum(key) < k:
                row[key] = c
        _insert(row, pivots)
    return len(mons) - len(pivots)


def _insert(row: dict, pivots: dict) -> None:
    while row:
        lead = min(row, key=_local_key)
        piv = pivots.get(lead)
        if piv is None:
            row = _primitive(row)
            if row[lead] < 0:
                row = {e: -v for e, v in row.items()}
            pivots[lead] = row
            return
        g = gcd(piv[lead], row[lead])
        a, b = piv[lead] // g, row[lead] // g
        new = {e: v * a for e, v in row.items()} if a != 1 else dict(row)
        for e, v in piv.items():
            nv = new.get(e, 0) - b * v
            if nv:
                new[e] = nv
            else:
                new.pop(e, None)
        row = _primitive(new) if new else new


def germ_milnor(g: Poly, truncation: int = DEFAULT_TRUNCATION) -> int | str:
    if truncation < 4:
        raise ValueError("truncation must be at least 4")
    if not germ_is_singular(g):
        raise NotSingularError("the point is not singular")
    jac = [g.diff(i) for i in range(g.nvars)]
    lo = colength(jac, g.nvars, truncation - 1)
    hi = colength(jac, g.nvars, truncation)
    return hi if lo == hi else NOT_STABILIZED


def germ_milnor_auto(g: Poly, truncations: Sequence[int] = (DEFAULT_TRUNCATION,) + RETRY_TRUNCATIONS) -> int | str:
    for k in truncations:
        mu = germ_milnor(g, k)
        if mu != NOT_STABILIZED:
            return mu
    return NOT_STABILIZED


def milnor_number(f: MultiPoly, p: ChartPoint, truncation: int = DEFAULT_TRUNCATION) -> int | str:
    return germ_milnor(germ(f, p), truncation)


def ade_classify(corank: int, milnor: int | str) -> str:
    if milnor in (NOT_STABILIZED, INFINITE):
        raise ValueError("ADE labels need a finite Milnor number")
    if corank <= 1:
        return f"A_{milnor}"
    if corank == 2 and milnor == 4:
        return "D_4"
    return "Unclassified"


@dataclass(frozen=True)
class SingularityReport:
    point: ChartPoint
    is_singular: bool
    multiplicity: int | None  # 0 off the divisor, None along an identically vanishing germ
    hessian_corank: int | None = None
    milnor: int | str | None = None
    ade_label: str | None = None

    def to_json(self, profile: DegreeProfile) -> dict:
        return {
            "point": self.point.to_json(profile),
            "is_singular": self.is_singular,
            "multiplicity": self.multiplicity,
            "hessian_corank": self.hessian_corank,
            "milnor": self.milnor,
            "ade_label": self.ade_label,
        }


def analyse_point(f: MultiPoly, p: ChartPoint, truncations: Sequence[int] = (DEFAULT_TRUNCATION,) + RETRY_TRUNCATIONS) -> SingularityReport:
    g = germ(f, p)
    if g.is_zero():
        return SingularityReport(p, True, None, g.nvars, INFINITE, "NonIsolated")
    mult = g.min_degree()
    if mult == 0:
        # off the divisor
        return SingularityReport(p, False, 0)
    if mult == 1:
        return SingularityReport(p, False, 1)
    corank = germ_corank(g)
    mu = germ_milnor_auto(g, truncations)
    label = "Unclassified" if mu == NOT_STABILIZED else ade_classify(corank, mu)
    return SingularityReport(p, True, mult, corank, mu, label)


def scan_pattern(f: MultiPoly, points: Sequence[ChartPoint | Sequence[Sequence]]) -> list[SingularityReport]:
    out = []
    for p in points:
        if not isinstance(p, ChartPoint):
            p = ChartPoint.from_homogeneous(f.profile, p)
        out.append(analyse_point(f, p))
    return out


def verify_nonisolated(f: MultiPoly, chart: Sequence[int], locus: Sequence[Sequence[Poly]]) -> bool:
    """True iff ``f`` and all chart partials vanish identically along a parametrised locus.

    ``locus`` gives, per factor, one polynomial in the parameters for each
    homogeneous variable.  The chart variable must be a nonzero constant.
    """
    profile = f.profile
    check_chart(profile, chart)
    if len(locus) != len(profile.factors):
        raise ValueError("locus does not match the profile")
    images: list[Poly] = []
    for k, part, fac in zip(chart, locus, profile.factors):
        if len(part) != fac.variable_count:
            raise ValueError("locus does not match the profile")
        anchor = part[k]
        consts = [c for e, c in anchor.terms.items() if any(e)]
        if consts or anchor.is_zero():
            raise ChartEscapeError("the chart variable is not a nonzero constant along the locus")
        c = next(iter(anchor.terms.values()))
        if not fac.unweighted and c != 1:
            raise ChartEscapeError("weighted factors need the chart variable equal to 1 along the locus")
        for j, q in enumerate(part):
            if j != k:
                images.append(q.scale(1 / c))
    loc = local_poly(f, chart)
    for h in [loc] + [loc.diff(i) for i in range(loc.nvars)]:
        if not h.compose(images).is_zero():
            return False
    return True


@dataclass(frozen=True)
class ConicCertificate:
    points: tuple[tuple[Fraction, ...], ...]
    smooth: bool
    distinct_curves: bool
    on_both: bool
    distinct_points: bool
    transverse: bool

    @property
    def complete(self) -> bool:
        """Four distinct transverse points of two distinct smooth conics exhaust the intersection (Bezout)."""
        return (
            self.smooth and self.distinct_curves and self.on_both
            and self.distinct_points and self.transverse and len(self.points) == 4
        )


def _symmetric_matrix(q: MultiPoly) -> list[list[Fraction]]:
    if len(q.profile.factors) != 1 or q.profile.factors[0].variable_count != 3 or q.profile.degrees != (2,):
        raise ValueError("conics live on a single plane factor of degree 2")
    a = [[Fraction(0)] * 3 for _ in range(3)]
    for m, c in q.terms:
        idx = [i for i, e in enumerate(m.exponents[0]) for _ in range(e)]
        i, j = idx
        if i == j:
            a[i][i] += c
        else:
            a[i][j] += c / 2
            a[j][i] += c / 2
    return a


def _eval_conic(a, p) -> Fraction:
    return sum(a[i][j] * p[i] * p[j] for i in range(3) for j in range(3))


def _grad_conic(a, p) -> tuple[Fraction, ...]:
    return tuple(2 * sum(a[i][j] * p[j] for j in range(3)) for i in range(3))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def certify_conic_pair(q1: MultiPoly, q2: MultiPoly, points: Sequence[Sequence]) -> ConicCertificate:
    a, b = _symmetric_matrix(q1), _symmetric_matrix(q2)
    pts = tuple(tuple(Fraction(x) for x in p) for p in points)
    smooth = rank(a) == 3 and rank(b) == 3
    distinct_curves = rank([[x for r in a for x in r], [x for r in b for x in r]]) == 2
    on_both = all(_eval_conic(a, p) == 0 and _eval_conic(b, p) == 0 for p in pts)
    distinct = all(any(_cross(p, r)) for i, p in enumerate(pts) for r in pts[i + 1:]) and all(any(p) for p in pts)
    transverse = all(any(_cross(_grad_conic(a, p), _grad_conic(b, p))) for p in pts)
    return ConicCertificate(pts, smooth, distinct_curves, on_both, distinct, transverse)


def conic_value(q: MultiPoly, point: Sequence) -> Fraction:
    return _eval_conic(_symmetric_matrix(q), [Fraction(x) for x in point])
