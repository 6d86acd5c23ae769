"""Enumerate candidate subgroups for a profile, find the maximal sets and classify them.

    python3 scripts/reproduce_classification.py --profile p112 --jobs 4 --out results/classification.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from gitstab import fixtures as fx
from gitstab.classify import Family, classify_family, label_records, polystable_candidates
from gitstab.destab import maximal_destab_sets, set_classes
from gitstab.ops import enumerate_candidates
from gitstab.poly import parse_profile


@dataclass
class Config:
    profile: str = "p112"
    jobs: int = 1
    out: str | None = None


def load_profile(name: str):
    try:
        return fx.profile(name), fx.subgroups(name)
    except fx.FixtureError:
        return parse_profile(name), {}


def main(cfg: Config) -> dict:
    profile, named = load_profile(cfg.profile)
    t0 = time.perf_counter()
    cands = enumerate_candidates(profile, cfg.jobs)
    t1 = time.perf_counter()
    recs = label_records(maximal_destab_sets(cands, profile, cfg.jobs), named, profile)
    t2 = time.perf_counter()
    rows = []
    for r in recs:
        v = classify_family(Family(r.n_oplus, profile), recs)
        rows.append({
            "label": r.label,
            "lambda": r.lam.to_json(),
            "n_oplus": len(r.n_oplus),
            "n_zero": len(r.n_zero),
            "verdict": v.stability.value,
            "witness": v.witness.to_json() if v.witness else None,
        })
    report = {
        "config": asdict(cfg),
        "profile": profile.spec_string(),
        "candidates": len(cands),
        "maximal_sets": rows,
        "set_classes": set_classes(recs, profile),
        "polystable_candidates": [f.to_json() for f in polystable_candidates(recs, profile)],
        "seconds": {"enumerate": round(t1 - t0, 2), "maximal": round(t2 - t1, 2)},
    }
    for row in rows:
        print(f"{str(row['label']):>8}  {row['lambda']}  |N+0|={row['n_oplus']:>2}  {row['verdict']}")
    print(f"{len(cands)} candidates, {len(recs)} maximal classes")
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps(report, indent=2) + "\n")
    return report


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--profile", default=Config.profile)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    ap.add_argument("--out")
    main(Config(**vars(ap.parse_args())))
