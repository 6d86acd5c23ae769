"""Sparse affine polynomials over the rationals, used for local germs."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .poly import MultiPoly, PolySyntaxError, _tokenize, check_chart


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        for k, v in (terms or {}).items():
            if v:
                if len(k) != nvars:
                    raise ValueError("exponent length does not match nvars")
                clean[tuple(k)] = Fraction(v)
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def from_exponents(cls, nvars: int, pairs: Iterable[tuple[Sequence[int], object]]) -> "Poly":
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in pairs:
            e = tuple(e)
            out[e] = out.get(e, Fraction(0)) + Fraction(c)
        return cls(nvars, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.terms})"

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self.nvars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[tuple[int, ...], Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return Poly(self.nvars, out)

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, i: int) -> "Poly":
        out = {}
        for k, v in self.terms.items():
            if k[i]:
                e = list(k)
                e[i] -= 1
                out[tuple(e)] = v * k[i]
        return Poly(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [Fraction(p) for p in point]
        total = Fraction(0)
        for k, v in self.terms.items():
            t = v
            for p, e in zip(pt, k):
                if e:
                    t *= p ** e
            total += t
        return total

    def min_degree(self) -> int | None:
        return min((sum(k) for k in self.terms), default=None)

    def degree(self) -> int | None:
        return max((sum(k) for k in self.terms), default=None)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.nvars, {k: v for k, v in self.terms.items() if sum(k) == d})

    def truncate(self, d: int) -> "Poly":
        """Drop terms of total degree >= d."""
        return Poly(self.nvars, {k: v for k, v in self.terms.items() if sum(k) < d})

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars if images else 0
        cache: dict[tuple[int, int], Poly] = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        total = Poly(nv)
        for k, v in self.terms.items():
            t = Poly.const(nv, v)
            for i, e in enumerate(k):
                if e:
                    t = t * power(i, e)
            total = total + t
        return total

    def shift(self, point: Sequence) -> "Poly":
        """The germ ``t -> f(point + t)``."""
        pt = [Fraction(p) for p in point]
        out: dict[tuple[int, ...], Fraction] = {}
        for k, v in self.terms.items():
            # expand prod (p_i + t_i)^e_i by the binomial theorem
            partial = {(): v}
            for p, e in zip(pt, k):
                nxt = {}
                for prefix, c in partial.items():
                    for j in range(e + 1):
                        coef = c * comb(e, j) * (p ** (e - j) if e - j else 1)
                        if coef:
                            key = prefix + (j,)
                            nxt[key] = nxt.get(key, Fraction(0)) + coef
                partial = nxt
            for key, c in partial.items():
                out[key] = out.get(key, Fraction(0)) + c
        return Poly(self.nvars, out)


def local_poly(f: MultiPoly, chart: Sequence[int]) -> Poly:
    """Dehomogenise ``f`` by setting the chart variable of each factor to 1."""
    check_chart(f.profile, chart)
    out: dict[tuple[int, ...], Fraction] = {}
    for m, c in f.terms:
        key = []
        for part, k in zip(m.exponents, chart):
            key.extend(e for j, e in enumerate(part) if j != k)
        key = tuple(key)
        out[key] = out.get(key, Fraction(0)) + c
    return Poly(f.profile.dim, out)


def parse_affine(text: str, names: Sequence[str]) -> Poly:
    """Parse a polynomial in the given affine variables (same grammar as the multihomogeneous parser)."""
    index = {n: i for i, n in enumerate(names)}
    toks = _tokenize(text)
    terms: list[tuple[list[int], Fraction]] = []
    pos = 0
    sign = 1
    expect_factor = True
    if toks[0][0] == "op" and toks[0][1] in "+-":
        sign = -1 if toks[0][1] == "-" else 1
        pos = 1
    cur_exp = [0] * len(names)
    cur_coef = Fraction(sign)
    while True:
        kind, val, line, col = toks[pos]
        if expect_factor:
            if kind == "num":
                value = Fraction(int(val))
                pos += 1
                if toks[pos][0] == "op" and toks[pos][1] == "/":
                    value /= int(toks[pos + 1][1])
                    pos += 2
                cur_coef *= value
            elif kind == "name":
                if val not in index:
                    raise ValueError(f"unknown variable {val!r}")
                pos += 1
                power = 1
                if toks[pos][0] == "op" and toks[pos][1] == "^":
                    power = int(toks[pos + 1][1])
                    pos += 2
                cur_exp[index[val]] += power
            else:
                raise PolySyntaxError("expected a number or variable", line, col)
            expect_factor = False
            continue
        if kind == "op" and val == "*":
            pos += 1
            expect_factor = True
            continue
        terms.append((cur_exp, cur_coef))
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            pos += 1
            cur_exp = [0] * len(names)
            cur_coef = Fraction(-1 if val == "-" else 1)
            expect_factor = True
            continue
        raise PolySyntaxError(f"unexpected {val!r}", line, col)
    return Poly.from_exponents(len(names), terms)
