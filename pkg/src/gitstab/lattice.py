"""Integral lattices: Gram arithmetic, inertia, isotropic box searches and the no-unigonal certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .parallel import parallel_map

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntegralLattice:
    basis_names: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if any(len(r) != n for r in gram):
            raise ValueError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        if len(self.basis_names) != n:
            raise ValueError("one basis name per row")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_names", tuple(self.basis_names))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def to_json(self) -> dict:
        return {"basis": list(self.basis_names), "gram": [list(r) for r in self.gram]}

    def vector_json(self, v: Sequence[int]) -> dict:
        return {n: int(c) for n, c in zip(self.basis_names, v)}


LAMBDA0 = IntegralLattice(("H1", "H2", "H3"), ((0, 2, 3), (2, 0, 3), (3, 3, 2)))
POLARIZATION = (1, 1, 1)


def _check(L: IntegralLattice, *vs: Sequence[int]) -> None:
    for v in vs:
        if len(v) != L.rank:
            raise ValueError(f"vector of length {len(v)} in a rank {L.rank} lattice")


def pairing_vec(L: IntegralLattice, v: Sequence[int], w: Sequence[int]) -> int:
    _check(L, v, w)
    return sum(v[i] * L.gram[i][j] * w[j] for i in range(L.rank) for j in range(L.rank))


def qform(L: IntegralLattice, v: Sequence[int]) -> int:
    return pairing_vec(L, v, v)


def signature(L: IntegralLattice) -> tuple[int, int, int]:
    """Inertia ``(positive, negative, zero)`` by symmetric congruence diagonalisation."""
    a = [[Fraction(x) for x in row] for row in L.gram]
    n = len(a)
    diag: list[Fraction] = []
    k = 0
    while k < n:
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                _swap(a, k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    # row k is zero in the remaining block
                    diag.append(Fraction(0))
                    k += 1
                    continue
                # e_k <- e_k + e_j makes the diagonal 2 a_kj != 0
                for i in range(n):
                    a[i][k] += a[i][j]
                for i in range(n):
                    a[k][i] += a[j][i]
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
                for j in range(k, n):
                    a[j][i] -= f * a[j][k]
        diag.append(p)
        k += 1
    return (sum(1 for d in diag if d > 0), sum(1 for d in diag if d < 0), sum(1 for d in diag if d == 0))


def _swap(a: list[list[Fraction]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def _slab(args) -> list[Vector]:
    L, ell, target, bound, first = args
    # the linear constraint fixes the last coordinate whenever its coefficient is nonzero
    coeffs = [sum(ell[i] * L.gram[i][j] for i in range(L.rank)) for j in range(L.rank)]
    n = L.rank
    out = []
    rng = range(-bound, bound + 1)
    last = coeffs[-1]
    for rest in product(rng, repeat=n - 2):
        head = (first,) + rest if n > 1 else (first,)
        if n == 1:
            cands = [head]
        elif last:
            r = target - sum(c * x for c, x in zip(coeffs, head))
            if r % last or abs(r // last) > bound:
                continue
            cands = [head + (r // last,)]
        else:
            cands = [head + (x,) for x in rng]
        for v in cands:
            if any(v) and qform(L, v) == 0 and sum(c * x for c, x in zip(coeffs, v)) == target:
                out.append(v)
    return out


def search_isotropic(L: IntegralLattice, ell: Sequence[int], target: int, bound: int = 50, jobs: int = 1) -> list[Vector]:
    """All nonzero ``v`` with ``|v_i| <= bound``, ``v.v = 0`` and ``ell.v = target``."""
    _check(L, ell)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    tasks = [(L, tuple(ell), target, bound, a) for a in range(-bound, bound + 1)]
    found = [v for chunk in parallel_map(_slab, tasks, jobs) for v in chunk]
    return sorted(found)


@dataclass(frozen=True)
class UnigonalReport:
    s_min: int
    s_max: int
    checked: int
    passed: bool
    counterexamples: tuple[int, ...]
    t_integral: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "range": [self.s_min, self.s_max],
            "checked": self.checked,
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
            "t_integral_at": list(self.t_integral),
        }


def unigonal_certificate(s_min: int, s_max: int) -> UnigonalReport:
    """For every ``s = 5 mod 8`` in range, check ``63 s^2 - 14 s - 1 > 0``.

    Also records where ``t = (95 s^2 - 14 s - 1) / 128`` is an integer.
    """
    if s_min > s_max:
        raise ValueError("empty range")
    bad, integral = [], []
    checked = 0
    for s in range(s_min, s_max + 1):
        if s % 8 != 5:
            continue
        checked += 1
        if 63 * s * s - 14 * s - 1 <= 0:
            bad.append(s)
        if (95 * s * s - 14 * s - 1) % 128 == 0:
            integral.append(s)
    return UnigonalReport(s_min, s_max, checked, not bad, tuple(bad), tuple(integral))


def discriminant(s: int) -> Fraction:
    return -Fraction(63 * s * s - 14 * s - 1, 32)


@dataclass(frozen=True)
class ObstructionReport:
    l_dot_gamma: int
    l_dot_gamma_prime: int
    gamma_prime_square: int
    stated_gamma_prime_square: int = -2

    @property
    def agrees_with_stated(self) -> bool:
        return self.gamma_prime_square == self.stated_gamma_prime_square

    def to_json(self) -> dict:
        return {
            "L.Gamma": self.l_dot_gamma,
            "L.Gamma'": self.l_dot_gamma_prime,
            "Gamma'^2": self.gamma_prime_square,
            "stated_Gamma'^2": self.stated_gamma_prime_square,
            "agrees_with_stated": self.agrees_with_stated,
        }


def degeneration_obstruction_check(L: IntegralLattice = LAMBDA0) -> ObstructionReport:
    gamma = (0, 0, 1)
    gamma_p = (1, 1, -1)
    return ObstructionReport(
        pairing_vec(L, POLARIZATION, gamma),
        pairing_vec(L, POLARIZATION, gamma_p),
        qform(L, gamma_p),
    )
