"""One-parameter subgroups of the maximal torus and the finite candidate set.

Candidates come from the hyperplane arrangement ``<lambda, m_a - m_b> = 0``
over pairs of profile monomials.  Any ``dim - 1`` independent hyperplanes cut
out a line in the sum-zero weight space; its two primitive generators are
the raw torus directions, and their sorted forms are the normalized
candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Sequence

from .parallel import parallel_map
from .poly import DegreeProfile, Monomial, enumerate_monomials


class SubgroupError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class OneParamSubgroup:
    """Integer weights per factor, summing to zero in each factor, primitive.

    Normalized subgroups additionally have non-increasing weights inside each
    block of equal-weight variables; torus witnesses in fixed coordinates
    need not be normalized.
    """

    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        w = tuple(tuple(int(x) for x in part) for part in self.weights)
        object.__setattr__(self, "weights", w)
        if any(sum(part) != 0 for part in w):
            raise SubgroupError(f"weights {w} do not sum to zero in every factor")
        flat = [x for part in w for x in part]
        if not any(flat):
            raise SubgroupError("the zero vector is not a one-parameter subgroup")
        if reduce(gcd, flat) != 1:
            raise SubgroupError(f"weights {w} are not primitive")

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for part in self.weights for x in part)

    def is_normalized(self, profile: DegreeProfile | None = None) -> bool:
        return normalize(self.weights, profile).weights == self.weights

    def negate(self) -> "OneParamSubgroup":
        return OneParamSubgroup(tuple(tuple(-x for x in part) for part in self.weights))

    def swap(self, perm: Sequence[int]) -> "OneParamSubgroup":
        return OneParamSubgroup(tuple(self.weights[j] for j in perm))

    def to_json(self) -> list[list[int]]:
        return [list(part) for part in self.weights]

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.flat) + ")"


def check_shape(lam: OneParamSubgroup, profile: DegreeProfile) -> None:
    if [len(p) for p in lam.weights] != [f.variable_count for f in profile.factors]:
        raise SubgroupError(f"subgroup {lam} does not match profile {profile.spec_string()}")


def pairing(lam: OneParamSubgroup, m: Monomial) -> int:
    if len(lam.weights) != len(m.exponents) or any(
        len(a) != len(b) for a, b in zip(lam.weights, m.exponents)
    ):
        raise SubgroupError("subgroup and monomial belong to different profiles")
    return sum(w * e for wp, ep in zip(lam.weights, m.exponents) for w, e in zip(wp, ep))


def _sort_part(part: Sequence[int], weights: Sequence[int] | None) -> tuple[int, ...]:
    if weights is None or all(w == weights[0] for w in weights):
        return tuple(sorted(part, reverse=True))
    # only variables of equal weight are interchangeable
    out = list(part)
    for w in set(weights):
        idx = [i for i, wi in enumerate(weights) if wi == w]
        vals = sorted((part[i] for i in idx), reverse=True)
        for i, v in zip(idx, vals):
            out[i] = v
    return tuple(out)


def normalize(raw: Sequence[Sequence[int]], profile: DegreeProfile | None = None) -> OneParamSubgroup:
    parts = [tuple(int(x) for x in part) for part in raw]
    if any(sum(p) != 0 for p in parts):
        raise SubgroupError(f"weights {parts} do not sum to zero in every factor")
    flat = [x for p in parts for x in p]
    if not any(flat):
        raise SubgroupError("the zero vector is not a one-parameter subgroup")
    g = reduce(gcd, flat)
    weights = None if profile is None else [f.variable_weights for f in profile.factors]
    out = tuple(
        _sort_part([x // g for x in p], None if weights is None else weights[i]) for i, p in enumerate(parts)
    )
    return OneParamSubgroup(out)


def _reduce(vec: Sequence[int], profile: DegreeProfile) -> tuple[int, ...]:
    """Coordinates of a functional on the sum-zero subspace.

    The last variable of each factor is eliminated: ``a_last = -sum(a_j)``.
    """
    out = []
    pos = 0
    for f in profile.factors:
        part = vec[pos:pos + f.variable_count]
        pos += f.variable_count
        out.extend(c - part[-1] for c in part[:-1])
    return tuple(out)


def _expand(red: Sequence[int], profile: DegreeProfile) -> tuple[tuple[int, ...], ...]:
    parts = []
    pos = 0
    for f in profile.factors:
        head = list(red[pos:pos + f.dim])
        pos += f.dim
        parts.append(tuple(head + [-sum(head)]))
    return tuple(parts)


def _det(rows: list[list[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_line(constraints: Sequence[Sequence[int]], dim: int) -> tuple[int, ...] | None:
    """Primitive generator of the common kernel of ``dim - 1`` functionals, or None if dependent."""
    if len(constraints) != dim - 1:
        raise ValueError("need exactly dim - 1 constraints")
    vec = []
    for j in range(dim):
        minor = [[row[k] for k in range(dim) if k != j] for row in constraints]
        vec.append((-1) ** j * _det(minor))
    if not any(vec):
        return None
    g = reduce(gcd, vec)
    return tuple(v // g for v in vec)


def difference_constraints(profile: DegreeProfile) -> list[tuple[int, ...]]:
    """Distinct nonzero reduced difference functionals ``m_a - m_b``, one per sign class."""
    mons = enumerate_monomials(profile)
    seen = set()
    out = []
    for a, b in combinations(mons, 2):
        diff = [x - y for x, y in zip(a.flat, b.flat)]
        red = _reduce(diff, profile)
        if not any(red):
            continue
        g = reduce(gcd, red)
        red = tuple(x // g for x in red)
        first = next(x for x in red if x)
        if first < 0:
            red = tuple(-x for x in red)
        if red not in seen:
            seen.add(red)
            out.append(red)
    out.sort()
    return out


def _lines_from(args) -> set[tuple[int, ...]]:
    head, constraints, dim = args
    found = set()
    rest = constraints[head + 1:]
    for combo in combinations(rest, dim - 2):
        line = kernel_line((constraints[head],) + combo, dim)
        if line is not None:
            found.add(line)
    return found


def _kernel_lines(profile: DegreeProfile, jobs: int = 1) -> list[tuple[int, ...]]:
    dim = profile.dim
    if dim == 0:
        return []
    if dim == 1:
        return [(1,)]
    constraints = difference_constraints(profile)
    tasks = [(i, constraints, dim) for i in range(len(constraints) - dim + 2)]
    lines: set[tuple[int, ...]] = set()
    for chunk in parallel_map(_lines_from, tasks, jobs):
        lines |= chunk
    return sorted(lines)


def torus_directions(profile: DegreeProfile, jobs: int = 1) -> list[OneParamSubgroup]:
    """All raw primitive generators (both signs), in the given coordinates."""
    out = set()
    for line in _kernel_lines(profile, jobs):
        for sign in (1, -1):
            out.add(OneParamSubgroup(_expand([sign * x for x in line], profile)))
    return sorted(out)


def enumerate_candidates(profile: DegreeProfile, jobs: int = 1) -> list[OneParamSubgroup]:
    """Normalized candidate subgroups; deduplicated by weight vector, sorted."""
    out = set()
    for line in _kernel_lines(profile, jobs):
        for sign in (1, -1):
            out.add(normalize(_expand([sign * x for x in line], profile), profile))
    return sorted(out)
