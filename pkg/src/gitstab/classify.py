"""Stability verdicts for monomial families and explicit divisors."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .destab import DestabRecord, factor_permutations
from .hull import Stability, torus_verdict
from .ops import OneParamSubgroup, pairing
from .poly import DegreeProfile, Monomial, MultiPoly, format_monomial

TORUS_CAVEAT = "torus stability in the given coordinates; no search over the full group orbit"


@dataclass(frozen=True)
class Family:
    support: frozenset[Monomial]
    profile: DegreeProfile
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        if not self.support:
            raise ValueError("family support must be nonempty")
        for m in self.support:
            m.check(self.profile)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "support": [format_monomial(m, self.profile) for m in sorted(self.support, key=Monomial.sort_key)],
        }


@dataclass(frozen=True)
class Verdict:
    stability: Stability
    witness: OneParamSubgroup | None = None
    containing: DestabRecord | None = None
    transform: tuple | None = None

    def to_json(self, profile: DegreeProfile) -> dict:
        out = {
            "class": self.stability.value,
            "witness": self.witness.to_json() if self.witness else None,
            "containing_maximal_set": None,
        }
        if self.containing is not None:
            out["containing_maximal_set"] = {
                "label": self.containing.label,
                "lambda": self.containing.lam.to_json(),
                "transform": _transform_json(self.transform),
            }
        return out


def _transform_json(t) -> dict | None:
    if t is None:
        return None
    perm, var_perms = t
    return {"factor_permutation": list(perm), "variable_permutations": [list(p) for p in var_perms]}


def _variable_permutations(weights: Sequence[int]) -> list[tuple[int, ...]]:
    n = len(weights)
    return sorted(p for p in permutations(range(n)) if all(weights[p[i]] == weights[i] for i in range(n)))


def symmetry_transforms(profile: DegreeProfile) -> list[tuple]:
    """Factor swaps combined with weight-preserving variable permutations inside each factor."""
    var_choices = [_variable_permutations(f.variable_weights) for f in profile.factors]
    out = []
    for perm in factor_permutations(profile):
        for vp in product(*var_choices):
            out.append((perm, vp))
    # identity first
    ident = (tuple(range(len(profile.factors))), tuple(tuple(range(f.variable_count)) for f in profile.factors))
    out.sort(key=lambda t: (t != ident, t))
    return out


def apply_transform(m: Monomial, t: tuple) -> Monomial:
    perm, var_perms = t
    swapped = m.swap(perm)
    return Monomial(tuple(tuple(part[j] for j in vp) for part, vp in zip(swapped.exponents, var_perms)))


def transform_subgroup(lam: OneParamSubgroup, t: tuple) -> OneParamSubgroup:
    perm, var_perms = t
    swapped = lam.swap(perm)
    return OneParamSubgroup(tuple(tuple(part[j] for j in vp) for part, vp in zip(swapped.weights, var_perms)))


def find_container(support: Iterable[Monomial], records: Sequence[DestabRecord], profile: DegreeProfile):
    """First ``(record, transform)`` whose transformed semi-destabilising set contains ``support``."""
    support = frozenset(support)
    transforms = symmetry_transforms(profile)
    for rec in records:
        for t in transforms:
            image = frozenset(apply_transform(m, t) for m in rec.n_oplus)
            if support <= image:
                return rec, t
    return None, None


def _check_records(records: Sequence[DestabRecord], profile: DegreeProfile) -> None:
    for r in records:
        if len(r.lam.weights) != len(profile.factors) or any(
            len(w) != f.variable_count for w, f in zip(r.lam.weights, profile.factors)
        ):
            raise ValueError("record does not match the family profile")


def classify_family(fam: Family, records: Sequence[DestabRecord]) -> Verdict:
    _check_records(records, fam.profile)
    rec, t = find_container(fam.support, records, fam.profile)
    if rec is None:
        return Verdict(Stability.STABLE)
    tv = torus_verdict(fam.support, fam.profile)
    if tv.stability == Stability.STABLE:
        # contained in a semi-destabilising set, so the hull test cannot be interior
        raise AssertionError("containment and centroid criterion disagree")
    if tv.stability == Stability.UNSTABLE:
        assert tv.witness is not None and all(pairing(tv.witness, m) > 0 for m in fam.support)
    return Verdict(tv.stability, tv.witness, rec, t)


def classify_divisor(f: MultiPoly, records: Sequence[DestabRecord], label: str = "") -> Verdict:
    if f.is_zero():
        raise ValueError("the zero polynomial does not define a divisor")
    return classify_family(Family(f.support, f.profile, label), records)


def polystable_candidates(records: Sequence[DestabRecord], profile: DegreeProfile) -> list[Family]:
    out = []
    for rec in records:
        v = classify_family(Family(rec.n_oplus, profile), records)
        if v.stability == Stability.STRICTLY_SEMISTABLE:
            out.append(Family(rec.n_zero, profile, f"N0:{rec.label or rec.lam}"))
    return out


def label_records(records: Sequence[DestabRecord], named: Mapping[str, OneParamSubgroup], profile: DegreeProfile) -> list[DestabRecord]:
    """Attach names to records whose subgroup is a factor-swap image of a named subgroup."""
    out = []
    for rec in records:
        label = None
        for name, lam in named.items():
            if any(lam.swap(p) == rec.lam for p in factor_permutations(profile)):
                label = name
                break
        out.append(DestabRecord(rec.lam, rec.n_plus, rec.n_oplus, rec.n_zero, rec.orbit_size, label))
    return out
