"""Loader for the bundled fixtures directory (overridable with ``GITSTAB_FIXTURES``)."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path

from .affine import Poly, parse_affine
from .lattice import IntegralLattice
from .ops import OneParamSubgroup
from .poly import DegreeProfile, MultiPoly, parse_poly, parse_profile, profile_from_json

ENV_VAR = "GITSTAB_FIXTURES"


class FixtureError(KeyError):
    pass


def fixture_root() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path(__file__).parent / "data"


@lru_cache(maxsize=8)
def _load(root: str) -> dict:
    path = Path(root) / "manifest.json"
    if not path.is_file():
        raise FixtureError(f"no manifest.json under {root}")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def manifest(root: Path | None = None) -> dict:
    return _load(str(root or fixture_root()))


def profile(name: str, root: Path | None = None) -> DegreeProfile:
    spec = manifest(root)["profiles"].get(name)
    if spec is None:
        raise FixtureError(f"unknown profile fixture {name!r}")
    return profile_from_json(spec) if isinstance(spec, dict) else parse_profile(spec)


def polynomial_names(root: Path | None = None) -> list[str]:
    return sorted(manifest(root)["polynomials"])


def _entry(name: str, root: Path | None) -> dict:
    entry = manifest(root)["polynomials"].get(name)
    if entry is None:
        raise FixtureError(f"unknown polynomial fixture {name!r}")
    return entry


def polynomial(name: str, root: Path | None = None) -> MultiPoly:
    entry = _entry(name, root)
    base = root or fixture_root()
    text = (Path(base) / entry["file"]).read_text(encoding="utf-8")
    return parse_poly(text, profile(entry["profile"], root))


def pattern(name: str, kind: str = "fixed", root: Path | None = None) -> list[list[list[int]]]:
    """Homogeneous points of a named pattern; ``product`` patterns expand factor by factor."""
    pats = _entry(name, root).get("patterns", {})
    if kind not in pats:
        raise FixtureError(f"fixture {name!r} has no {kind!r} pattern")
    spec = pats[kind]
    if "points" in spec:
        return [list(p) for p in spec["points"]]
    return [list(p) for p in product(*spec["product"])]


@dataclass(frozen=True)
class Locus:
    chart: tuple[int, ...]
    factors: tuple[tuple[Poly, ...], ...]


def has_locus(name: str, root: Path | None = None) -> bool:
    return "locus" in _entry(name, root)


def locus(name: str, root: Path | None = None) -> Locus:
    spec = _entry(name, root).get("locus")
    if spec is None:
        raise FixtureError(f"fixture {name!r} has no locus")
    params = spec["parameters"]
    return Locus(
        tuple(spec["chart"]),
        tuple(tuple(parse_affine(s, params) for s in part) for part in spec["factors"]),
    )


def subgroups(profile_name: str, root: Path | None = None) -> dict[str, OneParamSubgroup]:
    table = manifest(root).get("subgroups", {}).get(profile_name, {})
    return {k: OneParamSubgroup(tuple(tuple(p) for p in v)) for k, v in table.items()}


def lattice(name: str, root: Path | None = None) -> tuple[IntegralLattice, tuple[int, ...]]:
    spec = manifest(root)["lattices"].get(name)
    if spec is None:
        raise FixtureError(f"unknown lattice fixture {name!r}")
    L = IntegralLattice(tuple(spec["basis"]), tuple(tuple(r) for r in spec["gram"]))
    return L, tuple(spec.get("polarization", (1,) * L.rank))


def conic_pairs(root: Path | None = None) -> list[dict]:
    return manifest(root).get("conic_pairs", [])
