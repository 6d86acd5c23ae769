"""Destabilizing monomial sets and their maximal elements up to factor symmetry."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Sequence

from .ops import OneParamSubgroup, check_shape, pairing
from .parallel import parallel_map
from .poly import DegreeProfile, Monomial, enumerate_monomials, format_monomial


@dataclass(frozen=True)
class DestabRecord:
    lam: OneParamSubgroup
    n_plus: frozenset[Monomial]
    n_oplus: frozenset[Monomial]
    n_zero: frozenset[Monomial]
    orbit_size: int = 1
    label: str | None = field(default=None, compare=False)

    def to_json(self, profile: DegreeProfile) -> dict:
        def fmt(s):
            return [format_monomial(m, profile) for m in sorted(s, key=Monomial.sort_key)]

        return {
            "label": self.label,
            "lambda": self.lam.to_json(),
            "orbit_size": self.orbit_size,
            "n_plus": fmt(self.n_plus),
            "n_oplus": fmt(self.n_oplus),
            "n_zero": fmt(self.n_zero),
            "cardinalities": {
                "n_plus": len(self.n_plus),
                "n_oplus": len(self.n_oplus),
                "n_zero": len(self.n_zero),
            },
        }


def destab_record(lam: OneParamSubgroup, profile: DegreeProfile, monomials: Sequence[Monomial] | None = None) -> DestabRecord:
    check_shape(lam, profile)
    mons = enumerate_monomials(profile) if monomials is None else monomials
    plus, zero = [], []
    for m in mons:
        w = pairing(lam, m)
        if w > 0:
            plus.append(m)
        elif w == 0:
            zero.append(m)
    return DestabRecord(lam, frozenset(plus), frozenset(plus + zero), frozenset(zero))


def factor_permutations(profile: DegreeProfile) -> list[tuple[int, ...]]:
    """Permutations of factor positions that only exchange identical factors."""
    groups = profile.identical_factor_groups()
    perms = []
    for choice in product(*(permutations(g) for g in groups)):
        perm = list(range(len(profile.factors)))
        for g, img in zip(groups, choice):
            for src, dst in zip(g, img):
                perm[src] = dst
        perms.append(tuple(perm))
    return sorted(perms)


def _swap_set(s: frozenset[Monomial], perm: Sequence[int]) -> frozenset[Monomial]:
    return frozenset(m.swap(perm) for m in s)


def symmetry_orbit(rec: DestabRecord, profile: DegreeProfile) -> DestabRecord:
    """Canonical representative: the lexicographically least subgroup in the factor-swap orbit."""
    images = {}
    for perm in factor_permutations(profile):
        lam = rec.lam.swap(perm)
        images.setdefault(lam, perm)
    best = min(images)
    perm = images[best]
    return DestabRecord(
        best,
        _swap_set(rec.n_plus, perm),
        _swap_set(rec.n_oplus, perm),
        _swap_set(rec.n_zero, perm),
        orbit_size=len(images),
        label=rec.label,
    )


def orbit_sets(rec: DestabRecord, profile: DegreeProfile) -> list[frozenset[Monomial]]:
    return [_swap_set(rec.n_oplus, p) for p in factor_permutations(profile)]


def _maximal_indices(args) -> list[int]:
    lo, hi, sets = args
    keep = []
    for i in range(lo, hi):
        s = sets[i]
        dominated = False
        for j, t in enumerate(sets):
            if j != i and s < t:
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


def maximal_destab_sets(
    candidates: Sequence[OneParamSubgroup],
    profile: DegreeProfile,
    jobs: int = 1,
    key: str = "n_oplus",
) -> list[DestabRecord]:
    """Records whose ``key`` set is inclusion-maximal, one per factor-swap orbit of the subgroup.

    Distinct subgroups with equal sets are all kept (deduplication is by
    weight vector); ``set_classes`` groups them afterwards.
    """
    if not candidates:
        raise ValueError("empty candidate list")
    mons = enumerate_monomials(profile)
    recs = [destab_record(lam, profile, mons) for lam in sorted(set(candidates))]
    sets = [getattr(r, key) for r in recs]
    step = max(1, len(recs) // max(1, 4 * jobs))
    tasks = [(lo, min(lo + step, len(recs)), sets) for lo in range(0, len(recs), step)]
    keep = [i for chunk in parallel_map(_maximal_indices, tasks, jobs) for i in chunk]
    canon: dict[OneParamSubgroup, DestabRecord] = {}
    for i in keep:
        c = symmetry_orbit(recs[i], profile)
        canon.setdefault(c.lam, c)
    return [canon[lam] for lam in sorted(canon)]


def set_classes(records: Sequence[DestabRecord], profile: DegreeProfile) -> list[list[int]]:
    """Indices of records whose sets coincide up to factor swaps."""
    groups: dict[frozenset, list[int]] = {}
    for i, rec in enumerate(records):
        key = frozenset(orbit_sets(rec, profile))
        groups.setdefault(key, []).append(i)
    return sorted(groups.values())
