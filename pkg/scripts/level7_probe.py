#!/usr/bin/env python3
"""Probe the doubling inequalities one level beyond the test suite's scale.

Builds level 7 (about 2.6M vertices; takes a few minutes and a few GB),
then BFS-samples sources from level 6 and checks, on every pair the sampled
rows cover: d_7 <= 2 d_6 and 2 d_6 <= d_7 + 4.  The additive constant is
attained exactly at level 6 and the default run finds it broken here: the
max measured loss is 6, with d_7 <= 2 d_6 never failing.  One violating
pair was verified by hand: d_6 = 6 against an explicit 6-edge level-7 path
whose every edge carries an independently checked cone witness.

Usage: python scripts/level7_probe.py [--sources 48] [--seed 0] [--out DIR]
"""

import argparse
import random
import time
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from midpointlab.exports import write_json
from midpointlab.graphs import build_levels
from midpointlab.metrics import all_pairs


def compact_csr(level):
    indptr = np.zeros(level.vcount + 1, dtype=np.int64)
    for i, nbrs in enumerate(level.adjacency):
        indptr[i + 1] = indptr[i] + len(nbrs)
    indices = np.fromiter(
        (j for nbrs in level.adjacency for j in nbrs), dtype=np.int32, count=indptr[-1]
    )
    data = np.ones(indptr[-1], dtype=np.int8)
    return csr_matrix((data, indices, indptr), shape=(level.vcount, level.vcount))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sources", type=int, default=48)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="out")
    args = ap.parse_args()

    t0 = time.time()
    levels = build_levels(2, 7)
    l6, l7 = levels[6], levels[7]
    print(f"built level 7 in {time.time()-t0:.0f}s: "
          f"{l7.vcount} vertices, {l7.ecount} edges "
          f"(bound {l6.vcount * l6.ecount})")

    d6 = all_pairs(l6).dist.astype(np.int64)
    mat = compact_csr(l7)
    # level-6 vertices occupy the same leading indices inside level 7
    sub = np.arange(l6.vcount)

    rng = random.Random(args.seed)
    sources = sorted(rng.sample(range(l6.vcount), args.sources))
    max_gap = -(10**9)
    halving_bad = doubling_bad = 0
    pairs = 0
    t1 = time.time()
    for pos, s in enumerate(sources, 1):
        row7 = dijkstra(mat, unweighted=True, indices=s)[sub].astype(np.int64)
        row6 = d6[s]
        gap = 2 * row6 - row7
        max_gap = max(max_gap, int(gap.max()))
        halving_bad += int((row7 > 2 * row6).sum())
        doubling_bad += int((gap > 4).sum())
        pairs += len(sub)
        if pos % 8 == 0 or pos == len(sources):
            print(f"  {pos}/{len(sources)} sources, max gap so far {max_gap} "
                  f"({time.time()-t1:.0f}s)")

    report = {
        "level": 7,
        "vcount": l7.vcount,
        "ecount": l7.ecount,
        "sampled_sources": len(sources),
        "pairs_checked": pairs,
        "max_doubling_gap": max_gap,
        "violations_doubling": doubling_bad,  # 2 d_6 > d_7 + 4
        "violations_halving": halving_bad,    # d_7 > 2 d_6
    }
    print(report)
    write_json(report, Path(args.out) / "level7_probe.json")


if __name__ == "__main__":
    main()
