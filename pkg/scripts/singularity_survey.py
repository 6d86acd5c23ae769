"""Scan every bundled polynomial fixture over its point patterns and tabulate singularities."""

from __future__ import annotations

import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from gitstab import fixtures as fx
from gitstab.sing import ChartPoint, analyse_point, verify_nonisolated


@dataclass
class Config:
    fixtures: list[str] = field(default_factory=list)  # empty means every fixture with a pattern
    truncations: tuple[int, ...] = (8, 12)
    out: str | None = None


def survey(name: str, truncations) -> dict:
    f = fx.polynomial(name)
    patterns = fx.manifest()["polynomials"][name].get("patterns", {})
    out = {"fixture": name, "patterns": {}}
    for kind in sorted(patterns):
        labels = Counter()
        points = []
        for p in fx.pattern(name, kind):
            rep = analyse_point(f, ChartPoint.from_homogeneous(f.profile, p), truncations)
            if rep.is_singular:
                labels[rep.ade_label] += 1
                points.append(rep.to_json(f.profile))
        out["patterns"][kind] = {"labels": dict(sorted(labels.items())), "singular_points": points}
    if fx.has_locus(name):
        loc = fx.locus(name)
        out["nonisolated_locus"] = verify_nonisolated(f, loc.chart, loc.factors)
    return out


def main(cfg: Config) -> list[dict]:
    names = cfg.fixtures or [
        n for n in fx.polynomial_names() if fx.manifest()["polynomials"][n].get("patterns")
    ]
    rows = [survey(n, cfg.truncations) for n in names]
    for r in rows:
        for kind, res in r["patterns"].items():
            print(f"{r['fixture']:<24} {kind:<11} {res['labels']}")
        if "nonisolated_locus" in r:
            print(f"{r['fixture']:<24} locus       certified={r['nonisolated_locus']}")
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "survey": rows}, indent=2) + "\n")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fixtures", nargs="*")
    ap.add_argument("--truncation", type=int, action="append", dest="truncations")
    ap.add_argument("--out")
    ns = ap.parse_args()
    main(Config(ns.fixtures, tuple(ns.truncations or Config.truncations), ns.out))
