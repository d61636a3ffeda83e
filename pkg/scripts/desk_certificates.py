#!/usr/bin/env python3
"""Produce the desk-scale certificates: separated sets, recursive edge
bounds, and the base-level parameter scan.

Usage: python scripts/desk_certificates.py [--out DIR] [--seed 0]
"""

import argparse
from fractions import Fraction
from pathlib import Path

from midpointlab.exports import (
    bound_certificate_to_dict,
    separation_to_dict,
    to_jsonable,
    write_json,
)
from midpointlab.extremal import (
    bound_certificate,
    parameter_check,
    power_edge_count,
    ratio_trend,
    separated_set,
)
from midpointlab.graphs import build_levels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="out")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    out = Path(args.out)

    levels = build_levels(2, 6)

    print("separated sets:")
    for n, m, mode in ((5, 6, "exact"), (6, 8, "greedy")):
        cert = separated_set(levels, n, m, mode=mode, seed=args.seed)
        print(f"  n={n} m={m} ({cert.mode}): {cert.cardinality} vertices, "
              f"min pairwise d={cert.min_pairwise_distance}, "
              f"rho >= {cert.rho_lower} (refined {cert.rho_lower_refined})")
        write_json(separation_to_dict(cert), out / f"separated_n{n}_m{m}.json")

    print("\nedge-bound certificates:")
    for n, k in ((5, 4), (6, 4), (7, 4)):
        cert = bound_certificate(levels, n, k)
        line = (f"  n={n} k={k}: K={cert.K} parts={cert.parts} "
                f"exponents={cert.k_exponents} value={cert.exact_value}")
        if n < len(levels):
            exact = power_edge_count(levels[n], cert.m)
            line += f" (exact |E(G^{cert.m})| = {exact}, dominated: {exact <= cert.exact_value})"
        print(line)
        write_json(bound_certificate_to_dict(cert), out / f"bound_n{n}_k{k}.json")

    print("\ndensity trend (k=4):")
    for r in ratio_trend(levels, 4):
        print(f"  n={r.n} m={r.m}: |E(G^m)|/|V|^2 = {float(r.ratio):.6f}")

    print("\nbase-level parameter scan (epsilon = 1/32, alpha = 288):")
    rep = parameter_check(2, Fraction(1, 32), 2, levels=levels)
    print(f"  k=2 passes: {rep.passes}; smallest passing k: {rep.smallest_passing_k}")
    write_json(to_jsonable(rep), out / "parameter_check.json")


if __name__ == "__main__":
    main()
