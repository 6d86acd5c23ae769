"""Exact recomputation of the numeric identities used around the classification.

Intersection numbers live in a small Chow ring ``Q[h_1..h_k] / (h_i^(n_i+1))``
with the top class of a weighted factor normalised to ``1 / prod(weights)``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

from .lattice import LAMBDA0, qform
from .lp import rank
from .poly import DegreeProfile, MultiPoly, enumerate_monomials, parse_poly

ChowPoly = dict[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class ChowRing:
    dims: tuple[int, ...]
    point_normalization: tuple[Fraction, ...]

    @classmethod
    def of_profile(cls, profile: DegreeProfile) -> "ChowRing":
        return cls(
            tuple(f.dim for f in profile.factors),
            tuple(Fraction(1, prod(f.variable_weights)) for f in profile.factors),
        )

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def linear(self, coeffs: Sequence) -> ChowPoly:
        out: ChowPoly = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * len(self.dims)
                e[i] = 1
                out[tuple(e)] = Fraction(c)
        return out

    def mul(self, a: ChowPoly, b: ChowPoly) -> ChowPoly:
        out: ChowPoly = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if any(x > n for x, n in zip(e, self.dims)):
                    continue
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return {e: c for e, c in out.items() if c}

    def power(self, a: ChowPoly, k: int) -> ChowPoly:
        out: ChowPoly = {(0,) * len(self.dims): Fraction(1)}
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def degree(self, a: ChowPoly) -> Fraction:
        """Degree of the top-dimensional part."""
        top = tuple(self.dims)
        return a.get(top, Fraction(0)) * prod(self.point_normalization)


def anticanonical_class(profile: DegreeProfile) -> tuple[int, ...]:
    return tuple(sum(f.variable_weights) for f in profile.factors)


def anticanonical_degree(profile: DegreeProfile, divisor_class: Sequence[int]) -> Fraction:
    """``(-K_X)^(dim X)`` for a divisor ``X`` of the given class, via adjunction."""
    if len(divisor_class) != len(profile.factors):
        raise ValueError("class does not match the profile")
    if any(c < 0 for c in divisor_class):
        raise ValueError("class must be effective")
    ring = ChowRing.of_profile(profile)
    k = anticanonical_class(profile)
    minus_kx = ring.linear([a - d for a, d in zip(k, divisor_class)])
    return ring.degree(ring.mul(ring.power(minus_kx, ring.dim - 1), ring.linear(divisor_class)))


RELATIONS: dict[str, Callable[[object, object], bool]] = {
    "=": operator.eq,
    "<": operator.lt,
    ">": operator.gt,
    "<=": operator.le,
    ">=": operator.ge,
}


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    computed: object
    expected: object
    relation: str
    tag: str

    @property
    def passed(self) -> bool:
        return RELATIONS[self.relation](self.computed, self.expected)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "computed": _js(self.computed),
            "expected": _js(self.expected),
            "relation": self.relation,
            "passed": self.passed,
            "tag": self.tag,
        }


def _js(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, tuple):
        return [_js(v) for v in x]
    return x


def _span_dim(polys: Sequence[MultiPoly]) -> int:
    mons = enumerate_monomials(polys[0].profile)
    rows = []
    for p in polys:
        d = p.as_dict()
        rows.append([d.get(m, Fraction(0)) for m in mons])
    return rank(rows)


def luna_dimensions() -> dict[str, int]:
    """Dimensions around the closed orbit of ``q * l`` with ``q = z1^2 + z0 z2``, ``l = sum x_i y_j``."""
    profile = DegreeProfile.of((2, 1), (2, 1), (3, 2))
    q = "z1^2 + z0*z2"
    l_terms = ["x0*y0", "x0*y1", "x1*y0", "x1*y1"]
    quadrics = ["z0^2", "z0*z1", "z0*z2", "z1^2", "z1*z2", "z2^2"]
    l = " + ".join(l_terms)
    tangent = [_product(m, q, profile) for m in l_terms]
    tangent += [_product(l, m, profile) for m in quadrics]
    ambient = len(enumerate_monomials(profile))
    orbit_span = _span_dim(tangent)
    return {
        "V_tensor_V": len(l_terms),
        "quadrics": len(quadrics),
        "V_tensor_V_mod_l": len(l_terms) - 1,
        "quadrics_mod_q": len(quadrics) - 1,
        "orbit_tangent_with_scaling": orbit_span,
        "normal_space": ambient - orbit_span,
        "ambient_tangent": ambient - 1,
    }


def _product(a: str, b: str, profile: DegreeProfile) -> MultiPoly:
    terms_a = [t.strip() for t in a.split("+")]
    terms_b = [t.strip() for t in b.split("+")]
    return parse_poly(" + ".join(f"{x}*{y}" for x in terms_a for y in terms_b), profile)


def solve_adjunction(profile: DegreeProfile, target: Sequence[int]) -> tuple[int, ...]:
    """The class ``D`` with ``(-K_ambient - D)`` equal to ``target``."""
    return tuple(k - t for k, t in zip(anticanonical_class(profile), target))


def run_ledger() -> list[LedgerEntry]:
    F = Fraction
    p112 = DegreeProfile.of((2, 1), (2, 1), (3, 2))
    pw22 = DegreeProfile.of((3, (1, 1, 2), 2), (3, 2))
    p22 = DegreeProfile.of((3, 1), (3, 1))
    quadric = DegreeProfile.of((2, 1), (2, 1))
    luna = luna_dimensions()
    b = F(4 ** 3 * 6, 3 * 3 * 2 * 2)
    c = F(27 * 6, 3 * 3 * 3 * 1)
    h3 = qform(LAMBDA0, (0, 0, 1))
    two_l = qform(LAMBDA0, (2, 2, 0))
    two_h3 = qform(LAMBDA0, (0, 0, 2))
    ring = ChowRing.of_profile(quadric)
    entries = [
        LedgerEntry("a: 16*(3/4)^3", 16 * F(3, 4) ** 3, F(27, 4), "=", "volume"),
        LedgerEntry("b: 4^3*6/(3*3*2*2)", b, F(32, 3), "=", "volume"),
        LedgerEntry("b: bound", b, F(27, 2), "<", "volume"),
        LedgerEntry("c: 27*6/(3*3*3*1)", c, F(6), "=", "volume"),
        LedgerEntry("c: bound", c, F(27, 2), "<", "volume"),
        LedgerEntry("d: (H3)^2", h3, 2, "=", "riemann-roch"),
        LedgerEntry("d: h0(H3|S)", F(h3, 2) + 2, F(3), "=", "riemann-roch"),
        LedgerEntry("d: (2(H1+H2))^2", two_l, 16, "=", "riemann-roch"),
        LedgerEntry("d: h0(2L|S)", F(two_l, 2) + 2, F(10), "=", "riemann-roch"),
        LedgerEntry("d: h0(2H3)", F(two_h3, 2) + 2, F(6), "=", "riemann-roch"),
        LedgerEntry("e: dim V(x)V", luna["V_tensor_V"], 4, "=", "luna"),
        LedgerEntry("e: dim quadrics", luna["quadrics"], 6, "=", "luna"),
        LedgerEntry("e: dim V(x)V / l", luna["V_tensor_V_mod_l"], 3, "=", "luna"),
        LedgerEntry("e: dim quadrics / q", luna["quadrics_mod_q"], 5, "=", "luna"),
        LedgerEntry("e: normal space", luna["normal_space"], 15, "=", "luna"),
        LedgerEntry("e: normal space product", luna["V_tensor_V_mod_l"] * luna["quadrics_mod_q"], luna["normal_space"], "=", "luna"),
        LedgerEntry("e: ambient tangent", luna["ambient_tangent"], 23, "=", "luna"),
        LedgerEntry("f: class on P1xP1xP2", solve_adjunction(p112, (1, 1, 1)), (1, 1, 2), "=", "adjunction"),
        LedgerEntry("f: class on P(1,1,2)xP2", solve_adjunction(pw22, (2, 1)), (2, 2), "=", "adjunction"),
        LedgerEntry("g: (-K)^2 of P1xP1", ring.degree(ring.power(ring.linear(anticanonical_class(quadric)), 2)), F(8), "=", "del-pezzo"),
        LedgerEntry("(-K)^3 of (1,1,2) in P1xP1xP2", anticanonical_degree(p112, (1, 1, 2)), F(18), "=", "chow"),
        LedgerEntry("(-K)^3 of (2,2) in P(1,1,2)xP2", anticanonical_degree(pw22, (2, 2)), F(18), "=", "chow"),
        LedgerEntry("(-K)^3 of (1,1) in P2xP2", anticanonical_degree(p22, (1, 1)), F(48), "=", "chow"),
    ]
    return entries
