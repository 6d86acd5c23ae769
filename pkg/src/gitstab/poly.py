"""Multihomogeneous monomials and polynomials with exact rational coefficients.

A profile is a product of (weighted) projective factors, each carrying a
multidegree entry.  Monomials store one exponent tuple per factor; the
canonical order compares factor by factor, and within a factor larger
exponent vectors (lexicographically) come first, so ``x0^2 < x0*x1 < x1^2``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

LETTERS = "xyzuvws"


class ProfileError(ValueError):
    pass


class PolySyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DegreeMismatchError(ValueError):
    pass


class UnknownVariableError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    variable_count: int
    variable_weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "variable_weights", tuple(self.variable_weights))
        if self.variable_count < 1:
            raise ProfileError("a factor needs at least one variable")
        if len(self.variable_weights) != self.variable_count:
            raise ProfileError("variable_weights length must equal variable_count")
        if any(w < 1 for w in self.variable_weights):
            raise ProfileError("variable weights must be positive")
        if self.degree < 1:
            raise ProfileError("factor degree must be >= 1")

    @property
    def dim(self) -> int:
        return self.variable_count - 1

    @property
    def unweighted(self) -> bool:
        return all(w == 1 for w in self.variable_weights)


@dataclass(frozen=True)
class DegreeProfile:
    factors: tuple[Factor, ...]
    names: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ProfileError("profile needs at least one factor")
        if self.names is None:
            if len(self.factors) > len(LETTERS):
                raise ProfileError("too many factors for default variable names")
            names = tuple(
                tuple(f"{LETTERS[i]}{j}" for j in range(f.variable_count))
                for i, f in enumerate(self.factors)
            )
            object.__setattr__(self, "names", names)
        else:
            names = tuple(tuple(n) for n in self.names)
            object.__setattr__(self, "names", names)
            if [len(n) for n in names] != [f.variable_count for f in self.factors]:
                raise ProfileError("variable names do not match factor sizes")
            flat = [n for ns in names for n in ns]
            if len(set(flat)) != len(flat):
                raise ProfileError("duplicate variable names")
            for n in flat:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                    raise ProfileError(f"bad variable name {n!r}")

    @classmethod
    def of(cls, *spec: tuple) -> "DegreeProfile":
        """Build from ``(variable_count, degree)`` or ``(variable_count, weights, degree)`` tuples."""
        factors = []
        for item in spec:
            if len(item) == 2:
                n, d = item
                factors.append(Factor(n, (1,) * n, d))
            else:
                n, w, d = item
                factors.append(Factor(n, tuple(w), d))
        return cls(tuple(factors))

    @property
    def nvars(self) -> int:
        return sum(f.variable_count for f in self.factors)

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.factors)

    def identical_factor_groups(self) -> list[list[int]]:
        groups: dict[tuple, list[int]] = {}
        for i, f in enumerate(self.factors):
            groups.setdefault((f.variable_count, f.variable_weights, f.degree), []).append(i)
        return [g for g in groups.values()]

    def spec_string(self) -> str:
        parts = []
        for f in self.factors:
            if f.unweighted:
                parts.append(f"p{f.dim}:{f.degree}")
            else:
                parts.append("p(" + ",".join(map(str, f.variable_weights)) + f"):{f.degree}")
        return ",".join(parts)

    def to_json(self) -> dict:
        return {
            "factors": [
                {"weights": list(f.variable_weights), "degree": f.degree, "names": list(n)}
                for f, n in zip(self.factors, self.names)
            ]
        }


_FACTOR_RE = re.compile(r"\s*(?:p(\d+)|p\(([\d,\s]+)\))\s*:\s*(\d+)\s*")


def parse_profile(spec: str) -> DegreeProfile:
    """Parse ``p1:1,p1:1,p2:2`` or ``p(1,1,2):2,p2:2``; a path or JSON text is read as a manifest."""
    text = spec.strip()
    if text.startswith("{"):
        return profile_from_json(json.loads(text))
    if text.endswith(".json"):
        with open(text, encoding="utf-8") as fh:
            return profile_from_json(json.load(fh))
    factors = []
    pos = 0
    while pos < len(text):
        m = _FACTOR_RE.match(text, pos)
        if not m:
            raise ProfileError(f"cannot parse profile spec {spec!r} at offset {pos}")
        if m.group(1) is not None:
            n = int(m.group(1)) + 1
            weights = (1,) * n
        else:
            weights = tuple(int(w) for w in m.group(2).split(","))
            n = len(weights)
        factors.append(Factor(n, weights, int(m.group(3))))
        pos = m.end()
        if pos < len(text):
            if text[pos] != ",":
                raise ProfileError(f"expected ',' in profile spec at offset {pos}")
            pos += 1
    return DegreeProfile(tuple(factors))


def profile_from_json(doc: Mapping) -> DegreeProfile:
    factors, names = [], []
    for item in doc["factors"]:
        weights = tuple(item["weights"])
        factors.append(Factor(len(weights), weights, int(item["degree"])))
        names.append(item.get("names"))
    if all(n is None for n in names):
        return DegreeProfile(tuple(factors))
    if any(n is None for n in names):
        raise ProfileError("give names for every factor or for none")
    return DegreeProfile(tuple(factors), tuple(tuple(n) for n in names))


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(tuple(e) for e in self.exponents))

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(e for part in self.exponents for e in part)

    def sort_key(self) -> tuple:
        return tuple(tuple(-e for e in part) for part in self.exponents)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def check(self, profile: DegreeProfile) -> None:
        if len(self.exponents) != len(profile.factors):
            raise DegreeMismatchError(f"monomial {self.exponents} has the wrong number of factors")
        for i, (part, fac) in enumerate(zip(self.exponents, profile.factors)):
            if len(part) != fac.variable_count or any(e < 0 for e in part):
                raise DegreeMismatchError(f"monomial {self.exponents} has a bad exponent vector in factor {i}")
            deg = sum(w * e for w, e in zip(fac.variable_weights, part))
            if deg != fac.degree:
                raise DegreeMismatchError(
                    f"monomial {format_monomial(self, profile)} has degree {deg} in factor {i}, expected {fac.degree}"
                )

    def swap(self, perm: Sequence[int]) -> "Monomial":
        """Monomial with factor ``i`` taken from factor ``perm[i]``."""
        return Monomial(tuple(self.exponents[j] for j in perm))


def _weighted_compositions(weights: tuple[int, ...], degree: int) -> list[tuple[int, ...]]:
    if len(weights) == 1:
        return [(degree // weights[0],)] if degree % weights[0] == 0 else []
    out = []
    for e in range(degree // weights[0], -1, -1):
        for rest in _weighted_compositions(weights[1:], degree - e * weights[0]):
            out.append((e,) + rest)
    return out


def enumerate_monomials(profile: DegreeProfile) -> list[Monomial]:
    per_factor = [_weighted_compositions(f.variable_weights, f.degree) for f in profile.factors]
    mons = [Monomial(combo) for combo in product(*per_factor)]
    mons.sort(key=Monomial.sort_key)
    return mons


def format_monomial(m: Monomial, profile: DegreeProfile) -> str:
    parts = []
    for part, names in zip(m.exponents, profile.names):
        for e, name in zip(part, names):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class MultiPoly:
    profile: DegreeProfile
    terms: tuple[tuple[Monomial, Fraction], ...] = field(default=())

    def __post_init__(self):
        collected: dict[Monomial, Fraction] = {}
        for m, c in self.terms:
            collected[m] = collected.get(m, Fraction(0)) + Fraction(c)
        for m in collected:
            m.check(self.profile)
        clean = tuple(sorted(((m, c) for m, c in collected.items() if c != 0), key=lambda t: t[0].sort_key()))
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_dict(cls, profile: DegreeProfile, coeffs: Mapping[Monomial, Fraction | int]) -> "MultiPoly":
        return cls(profile, tuple((m, Fraction(c)) for m, c in coeffs.items()))

    @property
    def support(self) -> frozenset[Monomial]:
        return frozenset(m for m, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if other.profile != self.profile:
            raise ProfileError("profile mismatch")
        return MultiPoly(self.profile, self.terms + other.terms)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "MultiPoly":
        return MultiPoly(self.profile, tuple((m, Fraction(c) * v) for m, v in self.terms))

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(f.terms):
        mono = format_monomial(m, f.profile)
        mag = abs(c)
        body = mono if mag == 1 else f"{_format_coeff(mag)}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        if text[pos] in " \t\r\n":
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), line, start - line_start + 1))
        pos = m.end()
    tokens.append(("end", "", line, pos - line_start + 1))
    return tokens


def parse_poly(text: str, profile: DegreeProfile) -> MultiPoly:
    """Parse the term-list grammar: ``[+-] term ((+|-) term)*`` with ``*``-joined factors.

    A factor is an integer, a fraction ``p/q`` or ``name[^k]``.
    """
    index = {name: (i, j) for i, ns in enumerate(profile.names) for j, name in enumerate(ns)}
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind=None, value=None):
        nonlocal pos
        tok = toks[pos]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PolySyntaxError(f"expected {want}, got {got!r}", tok[2], tok[3])
        pos += 1
        return tok

    def factor(coef, exps):
        tok = peek()
        if tok[0] == "num":
            take()
            value = Fraction(int(tok[1]))
            if peek()[0] == "op" and peek()[1] == "/":
                take()
                den = take("num")
                if int(den[1]) == 0:
                    raise PolySyntaxError("zero denominator", den[2], den[3])
                value /= int(den[1])
            return coef * value
        if tok[0] == "name":
            take()
            if tok[1] not in index:
                raise UnknownVariableError(f"unknown variable {tok[1]!r} at line {tok[2]}, column {tok[3]}")
            power = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                power = int(take("num")[1])
            i, j = index[tok[1]]
            exps[i][j] += power
            return coef
        raise PolySyntaxError(f"expected a number or variable, got {tok[1] or 'end of input'!r}", tok[2], tok[3])

    def term(sign):
        coef = Fraction(sign)
        exps = [[0] * f.variable_count for f in profile.factors]
        coef = factor(coef, exps)
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            coef = factor(coef, exps)
        return Monomial(tuple(tuple(e) for e in exps)), coef

    terms = []
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    terms.append(term(sign))
    while peek()[0] != "end":
        tok = peek()
        if not (tok[0] == "op" and tok[1] in "+-"):
            raise PolySyntaxError(f"expected '+' or '-', got {tok[1]!r}", tok[2], tok[3])
        take()
        terms.append(term(-1 if tok[1] == "-" else 1))

    collected: dict[Monomial, Fraction] = {}
    for m, c in terms:
        # a literal 0 term is the zero polynomial, not a degree error
        if c == 0:
            continue
        m.check(profile)
        collected[m] = collected.get(m, Fraction(0)) + c
    return MultiPoly.from_dict(profile, collected)


def monomial_poly(profile: DegreeProfile, support: Iterable[Monomial], coeff: int = 1) -> MultiPoly:
    return MultiPoly.from_dict(profile, {m: coeff for m in support})


def _local_terms(f: MultiPoly, chart: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for m, c in f.terms:
        key = []
        for part, k in zip(m.exponents, chart):
            key.extend(e for j, e in enumerate(part) if j != k)
        key = tuple(key)
        out[key] = out.get(key, Fraction(0)) + c
    return out


def check_chart(profile: DegreeProfile, chart: Sequence[int]) -> None:
    if len(chart) != len(profile.factors):
        raise ValueError(f"chart has {len(chart)} entries, profile has {len(profile.factors)} factors")
    for k, f in zip(chart, profile.factors):
        if not 0 <= k < f.variable_count:
            raise ValueError(f"chart index {k} out of range for a factor with {f.variable_count} variables")


def evaluate_gradient(f: MultiPoly, chart: Sequence[int], point: Sequence) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Value and gradient of ``f`` dehomogenised at ``chart`` (one variable index per factor).

    ``point`` lists the remaining coordinates, factor by factor.
    """
    check_chart(f.profile, chart)
    dim = f.profile.dim
    if len(point) != dim:
        raise ValueError(f"point has {len(point)} coordinates, chart dimension is {dim}")
    pt = [Fraction(p) for p in point]
    value = Fraction(0)
    grad = [Fraction(0)] * dim
    for key, c in _local_terms(f, chart).items():
        powers = [p ** e for p, e in zip(pt, key)]
        term = c
        for p in powers:
            term *= p
        value += term
        for i, e in enumerate(key):
            if e == 0:
                continue
            d = c * e * pt[i] ** (e - 1)
            for j, pj in enumerate(powers):
                if j != i:
                    d *= pj
            grad[i] += d
    return value, tuple(grad)
