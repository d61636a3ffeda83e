#!/usr/bin/env python3
"""Survey the distance-collapse behavior between consecutive levels.

Reports, per level: the worst additive loss 2 d_{n-1} - d_n (the doubling
inequality allows at most 4), and how often the distance between two cone
midpoints undercuts both pairings of their endpoint distances one level
down (none through level 5; first mismatches at level 6).

Usage: python scripts/collapse_findings.py [--top 6] [--out DIR]
"""

import argparse
from pathlib import Path

from midpointlab.exports import write_json
from midpointlab.graphs import build_levels
from midpointlab.metrics import additive_error_check, distance
from midpointlab.vertex import decode, midpoint


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--top", type=int, default=6)
    ap.add_argument("--out", default="out")
    args = ap.parse_args()

    levels = build_levels(2, args.top)
    rows = []
    print(f"{'n':>3} {'pairs':>7} {'max 2d-d':>9} {'2d<=d+4':>8} {'quadruples':>11} {'mismatches':>11}")
    for n in range(2, args.top + 1):
        rep = additive_error_check(n, levels)
        rows.append(rep.__dict__)
        print(f"{n:>3} {rep.pairs_checked:>7} {rep.max_gap:>9} "
              f"{str(rep.doubling_violations == 0):>8} {rep.cone_quadruples:>11} "
              f"{rep.cone_violations:>11}")

    if args.top >= 6:
        x = decode("{0,1}")
        xp = decode("{0,{1,{1,{0,1}}}}")
        y = decode("{{0,1},{0,{0,1}}}")
        yp = decode("{{0,1},{0,{0,{0,1}}}}")
        p, q = midpoint(x, xp), midpoint(y, yp)
        l5, l6 = levels[5], levels[6]
        pairing = min(
            distance(l5, x, y) + distance(l5, xp, yp),
            distance(l5, x, yp) + distance(l5, xp, y),
        )
        print("\nsmallest-level mismatch witness (level 6):")
        print(f"  p = m({x}, {xp})")
        print(f"  q = m({y}, {yp})")
        print(f"  d6(p, q) = {distance(l6, p, q)}, best endpoint pairing = {pairing}")

    write_json(rows, Path(args.out) / "collapse_findings.json")


if __name__ == "__main__":
    main()
