"""Command-line interface: every subcommand writes one JSON document."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import fixtures as fx
from .classify import Family, TORUS_CAVEAT, classify_divisor, classify_family, label_records, polystable_candidates
from .destab import DestabRecord, maximal_destab_sets, set_classes
from .hull import torus_verdict
from .lattice import (
    degeneration_obstruction_check,
    qform,
    search_isotropic,
    signature,
    unigonal_certificate,
)
from .ledger import run_ledger
from .ops import enumerate_candidates, torus_directions
from .poly import (
    DegreeProfile,
    PolySyntaxError,
    ProfileError,
    enumerate_monomials,
    format_monomial,
    format_poly,
    parse_poly,
    parse_profile,
)
from .sing import (
    DEFAULT_TRUNCATION,
    ChartPoint,
    analyse_point,
    verify_nonisolated,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    profile: str | None = None
    input: str | None = None
    fixture: str | None = None
    pattern: str = "fixed"
    points: tuple[str, ...] = ()
    bound: int = 50
    truncation: int = DEFAULT_TRUNCATION
    jobs: int = 1
    out: str | None = None
    lattice_action: str = "all"
    target: int = 1

    def __post_init__(self):
        if self.bound < 0:
            raise UsageError("--bound must be non-negative")
        if self.truncation < 4:
            raise UsageError("--truncation must be at least 4")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")


def _profile(cfg: RunConfig) -> DegreeProfile:
    if cfg.profile is None:
        raise UsageError("--profile is required")
    try:
        return fx.profile(cfg.profile)
    except (fx.FixtureError, KeyError):
        return parse_profile(cfg.profile)


def _named_subgroups(profile: DegreeProfile) -> dict:
    for name in fx.manifest()["profiles"]:
        if fx.profile(name) == profile:
            return fx.subgroups(name)
    return {}


def _records(profile: DegreeProfile, jobs: int) -> tuple[list, list[DestabRecord]]:
    cands = enumerate_candidates(profile, jobs)
    recs = maximal_destab_sets(cands, profile, jobs)
    return cands, label_records(recs, _named_subgroups(profile), profile)


def cmd_monomials(cfg: RunConfig) -> tuple[dict, bool]:
    profile = _profile(cfg)
    mons = enumerate_monomials(profile)
    return {"profile": profile.to_json(), "count": len(mons), "monomials": [format_monomial(m, profile) for m in mons]}, True


def cmd_ops(cfg: RunConfig) -> tuple[dict, bool]:
    profile = _profile(cfg)
    cands, recs = _records(profile, cfg.jobs)
    raw = torus_directions(profile, cfg.jobs)
    report = {
        "profile": profile.to_json(),
        "candidate_count": len(cands),
        "torus_direction_count": len(raw),
        "candidates": [c.to_json() for c in cands],
        "maximal": [r.to_json(profile) for r in recs],
        "set_classes": set_classes(recs, profile),
        "verdicts": {
            (r.label or str(r.lam)): torus_verdict(r.n_oplus, profile).stability.value for r in recs
        },
    }
    return report, True


def _load_input(cfg: RunConfig):
    """The polynomial or family named by ``--input``/``--fixture``."""
    if cfg.fixture and ":" in cfg.fixture:
        kind, label = cfg.fixture.split(":", 1)
        if kind not in ("Noplus", "N0"):
            raise UsageError(f"unknown family kind {kind!r}")
        profile = fx.profile(cfg.profile or "p112")
        _, recs = _records(profile, cfg.jobs)
        for r in recs:
            if r.label == label or str(r.lam) == label:
                support = r.n_oplus if kind == "Noplus" else r.n_zero
                return Family(support, profile, cfg.fixture), recs
        raise UsageError(f"no maximal record labelled {label!r}")
    if cfg.fixture:
        try:
            f = fx.polynomial(cfg.fixture)
        except fx.FixtureError as e:
            raise UsageError(str(e.args[0])) from e
        return f, None
    if cfg.input is not None:
        text = cfg.input
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        return parse_poly(text, _profile(cfg)), None
    raise UsageError("give --input or --fixture")


def cmd_classify(cfg: RunConfig) -> tuple[dict, bool]:
    obj, recs = _load_input(cfg)
    profile = obj.profile
    if recs is None:
        _, recs = _records(profile, cfg.jobs)
    if isinstance(obj, Family):
        verdict = classify_family(obj, recs)
        head = {"family": obj.to_json()}
    else:
        verdict = classify_divisor(obj, recs)
        head = {"polynomial": format_poly(obj)}
    report = {
        **head,
        "profile": profile.to_json(),
        "verdict": verdict.to_json(profile),
        "caveat": TORUS_CAVEAT,
        "polystable_candidates": [fam.to_json() for fam in polystable_candidates(recs, profile)],
    }
    return report, True


def _parse_point(text: str) -> list[list[Fraction]]:
    try:
        return [[Fraction(x) for x in part.split(",")] for part in text.split(";")]
    except ValueError as e:
        raise UsageError(f"bad point {text!r}") from e


def cmd_sing(cfg: RunConfig) -> tuple[dict, bool]:
    f, _ = _load_input(cfg)
    if isinstance(f, Family):
        raise UsageError("sing needs an explicit polynomial")
    if cfg.points:
        pts = [_parse_point(p) for p in cfg.points]
    elif cfg.fixture:
        pts = fx.pattern(cfg.fixture, cfg.pattern)
    else:
        raise UsageError("give --point or a fixture with a pattern")
    truncations = tuple(sorted({cfg.truncation, max(cfg.truncation, 12)}))
    reports = []
    for p in pts:
        try:
            cp = ChartPoint.from_homogeneous(f.profile, p)
        except ValueError as e:
            raise UsageError(str(e)) from e
        reports.append(analyse_point(f, cp, truncations).to_json(f.profile))
    out = {
        "polynomial": format_poly(f),
        "profile": f.profile.to_json(),
        "reports": reports,
        "singular_count": sum(1 for r in reports if r["is_singular"]),
        "labels": _label_counts(reports),
    }
    if cfg.fixture and fx.has_locus(cfg.fixture):
        loc = fx.locus(cfg.fixture)
        out["nonisolated_locus"] = verify_nonisolated(f, loc.chart, loc.factors)
    return out, True


def _label_counts(reports: Sequence[dict]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for r in reports:
        if r["is_singular"]:
            counts[r["ade_label"]] = counts.get(r["ade_label"], 0) + 1
    return dict(sorted(counts.items()))


def cmd_lattice(cfg: RunConfig) -> tuple[dict, bool]:
    L, pol = fx.lattice(cfg.fixture or "Lambda0")
    act = cfg.lattice_action
    out: dict = {"lattice": L.to_json(), "polarization": L.vector_json(pol)}
    ok = True
    if act in ("signature", "all"):
        out["signature"] = list(signature(L))
    if act in ("qform", "all"):
        out["qform_polarization"] = qform(L, pol)
    if act in ("isotropic", "all"):
        found = search_isotropic(L, pol, cfg.target, cfg.bound, cfg.jobs)
        out["isotropic"] = {"target": cfg.target, "bound": cfg.bound, "found": [L.vector_json(v) for v in found]}
    if act in ("unigonal", "all"):
        rep = unigonal_certificate(-1000, 1000)
        out["unigonal"] = rep.to_json()
        ok = ok and rep.passed
    if act in ("obstruction", "all"):
        out["obstruction"] = degeneration_obstruction_check(L).to_json()
    return out, ok


def cmd_ledger(cfg: RunConfig) -> tuple[dict, bool]:
    entries = run_ledger()
    return {"entries": [e.to_json() for e in entries], "all_passed": all(e.passed for e in entries)}, all(
        e.passed for e in entries
    )


COMMANDS = {
    "monomials": cmd_monomials,
    "ops": cmd_ops,
    "classify": cmd_classify,
    "sing": cmd_sing,
    "lattice": cmd_lattice,
    "ledger": cmd_ledger,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gitstab", description="Exact GIT stability of multidegree hypersurfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--profile", help="profile spec (p1:1,p1:1,p2:2), JSON, .json path or fixture name")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", help="write the JSON report here instead of stdout")

    for name in ("monomials", "ops", "ledger"):
        common(sub.add_parser(name))
    p = sub.add_parser("classify")
    common(p)
    p.add_argument("--input", help="polynomial text, or @path")
    p.add_argument("--fixture", help="polynomial fixture, or Noplus:<label> / N0:<label>")
    p = sub.add_parser("sing")
    common(p)
    p.add_argument("--input")
    p.add_argument("--fixture")
    p.add_argument("--pattern", default="fixed")
    p.add_argument("--point", action="append", default=[], help="homogeneous point, e.g. '0,1;0,1;0,0,1'")
    p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    p = sub.add_parser("lattice")
    common(p)
    p.add_argument("action", nargs="?", default="all", choices=["all", "signature", "qform", "isotropic", "unigonal", "obstruction"])
    p.add_argument("--fixture", default="Lambda0")
    p.add_argument("--bound", type=int, default=50)
    p.add_argument("--target", type=int, default=1)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        profile=ns.profile,
        input=getattr(ns, "input", None),
        fixture=getattr(ns, "fixture", None),
        pattern=getattr(ns, "pattern", "fixed"),
        points=tuple(getattr(ns, "point", ())),
        bound=getattr(ns, "bound", 50),
        truncation=getattr(ns, "truncation", DEFAULT_TRUNCATION),
        jobs=ns.jobs,
        out=ns.out,
        lattice_action=getattr(ns, "action", "all"),
        target=getattr(ns, "target", 1),
    )


def run(cfg: RunConfig) -> tuple[str, int]:
    report, ok = COMMANDS[cfg.command](cfg)
    doc = {"schema_version": SCHEMA_VERSION, "command": cfg.command, **report}
    return json.dumps(doc, indent=2) + "\n", EXIT_OK if ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        text, code = run(cfg)
    except (UsageError, ProfileError, PolySyntaxError, fx.FixtureError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
