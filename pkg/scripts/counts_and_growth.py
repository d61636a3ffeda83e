#!/usr/bin/env python3
"""Print the level counts and growth inequalities for small leaf counts.

Usage: python scripts/counts_and_growth.py [--n0 2] [--level 6] [--out DIR]
"""

import argparse
from fractions import Fraction
from pathlib import Path

from midpointlab.exports import write_counts_csv, write_json
from midpointlab.graphs import build_levels, check_growth, predict_vcounts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n0", type=int, default=2)
    ap.add_argument("--level", type=int, default=6)
    ap.add_argument("--out", default="out")
    args = ap.parse_args()

    levels = build_levels(args.n0, args.level)
    vcounts = [l.vcount for l in levels]
    ecounts = [l.ecount for l in levels]
    print(f"n0 = {args.n0}")
    print(f"{'n':>3} {'|V_n|':>10} {'|E_n|':>10} {'predicted':>10}")
    predicted = predict_vcounts(args.n0, args.level)
    for n, (v, e) in enumerate(zip(vcounts, ecounts)):
        print(f"{n:>3} {v:>10} {e:>10} {predicted[n]:>10}")

    rows = check_growth(vcounts, ecounts, n0=args.n0, epsilon=Fraction(1, 32))
    print("\ngrowth checks (True = inequality holds, blank = not applicable):")
    print(f"{'n':>3} {'V^2<=3V':>9} {'V>=V^2':>8} {'E-step':>8} {'E-prod':>8} {'density':>10}")
    for r in rows:
        fmt = lambda b: "" if b is None else str(b)
        dens = "" if r["density"] is None else f"{r['density']:.5f}"
        print(f"{r['n']:>3} {fmt(r['ratio3_ok']):>9} {fmt(r['square_ok']):>8} "
              f"{fmt(r['edge_step_ok']):>8} {fmt(r['edge_prod_ok']):>8} {dens:>10}")

    out = Path(args.out)
    write_counts_csv(levels, out / f"counts_n0{args.n0}.csv")
    write_json(rows, out / f"growth_n0{args.n0}.json")
    print(f"\nwrote {out}/counts_n0{args.n0}.csv and growth_n0{args.n0}.json")


if __name__ == "__main__":
    main()
