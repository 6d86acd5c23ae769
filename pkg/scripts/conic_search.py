"""Search triples of diagonal conics a*z0^2 + b*z1^2 + c*z2^2 meeting pairwise in rational points.

The four intersection points of two diagonal conics are (+-p, +-q, r) with
(p^2, q^2, r^2) proportional to the cross product of the coefficient vectors.
Searching dually, pick three square vectors s1, s2, s3; the conic through the
points of s_j and s_k has coefficients s_j x s_k.  Every triple found is
certified exactly (smooth, distinct, transverse, four points per pair).
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

from gitstab import fixtures as fx
from gitstab.poly import parse_poly
from gitstab.sing import certify_conic_pair, conic_value

PLANE = fx.profile("plane")


@dataclass
class Config:
    max_root: int = 4
    max_triples: int = 5


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _primitive(u):
    g = gcd(*u)
    u = tuple(x // g for x in u)
    return u if next(x for x in u if x) > 0 else tuple(-x for x in u)


def points_of(root):
    p, q, r = root
    return [(sp * p, sq * q, r) for sp, sq in product((1, -1), repeat=2)]


def conic(u):
    return parse_poly(" ".join(f"{c:+d}*z{i}^2" for i, c in enumerate(u)), PLANE)


def main(cfg: Config) -> list:
    m = cfg.max_root
    roots = [(p, q, r) for p in range(1, m + 1) for q in range(1, m + 1) for r in range(1, m + 1) if gcd(p, q, r) == 1]
    found = []
    for a, b, c in combinations(roots, 3):
        sq = [tuple(x * x for x in t) for t in (a, b, c)]
        # conic i passes through the points of the other two roots
        conics = [_primitive(_cross(sq[1], sq[2])), _primitive(_cross(sq[0], sq[2])), _primitive(_cross(sq[0], sq[1]))]
        if any(0 in u for u in conics):
            continue
        pts = [points_of(t) for t in (a, b, c)]
        if len({x for p in pts for x in p}) != 12:
            continue
        qs = [conic(u) for u in conics]
        certs = [certify_conic_pair(qs[j], qs[k], pts[i]) for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1))]
        # empty triple intersection: conic i misses the points shared by the other two
        empty = all(conic_value(qs[i], p) != 0 for i in range(3) for p in pts[i])
        if empty and all(cert.complete for cert in certs):
            found.append((conics, (a, b, c)))
            print("conics", conics, "points", (a, b, c))
            if len(found) >= cfg.max_triples:
                break
    return found


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-root", type=int, default=Config.max_root)
    ap.add_argument("--max-triples", type=int, default=Config.max_triples)
    ns = ap.parse_args()
    main(Config(ns.max_root, ns.max_triples))
