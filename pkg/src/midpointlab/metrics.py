"""Exact hop metrics, scaled metrics, rigorous limit intervals, simplex
coordinates, and Lipschitz push-forwards into external midpoint spaces.

Hop distances are exact integers (BFS); everything scaled is kept as
``fractions.Fraction`` so no check ever depends on floating point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from .errors import DisconnectedGraphError, ConicalAxiomError
from .graphs import GraphLevel
from .vertex import Vertex, midpoint

__all__ = [
    "DistanceTable",
    "RhoInterval",
    "bfs_distance",
    "all_pairs",
    "distance",
    "diameter_check",
    "scaled_rho_n",
    "rho_interval",
    "additive_error_check",
    "delta_coordinates",
    "EuclideanTarget",
    "SupNormTarget",
    "push_forward",
    "shortest_path_between",
]

# All-pairs tables are materialized below this vertex count; larger levels
# fall back to per-source rows on demand.
APSP_DEFAULT_CAP = 5000


@dataclass
class DistanceTable:
    """Exact hop distances from each source row to every vertex.

    ``dist`` is int16 (hop counts stay below 2**15 for every feasible level).
    """

    n: int
    sources: list[int]
    dist: np.ndarray
    complete: bool

    def row(self, source_index: int) -> np.ndarray:
        pos = self.sources.index(source_index) if not self.complete else source_index
        return self.dist[pos]

    def get(self, i: int, j: int) -> int:
        return int(self.row(i)[j])


@dataclass(frozen=True)
class RhoInterval:
    """Enclosure of the limiting scaled distance of two vertices.

    The level-N scaled distance bounds the limit from above (scaled
    distances never increase level to level); the lower bound discounts it
    by the standing collapse allowance 8/2^N and clamps at zero.  The
    allowance holds exhaustively through level 6 but measurably erodes at
    level 7 (see scripts/level7_probe.py), so lower bounds should be read
    with that caveat.
    """

    lower: Fraction
    upper: Fraction
    witness_level: int

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper


def _csr(level: GraphLevel) -> csr_matrix:
    mat = level._cache.get("csr")
    if mat is None:
        indptr = np.zeros(level.vcount + 1, dtype=np.int64)
        for i, nbrs in enumerate(level.adjacency):
            indptr[i + 1] = indptr[i] + len(nbrs)
        indices = np.fromiter(
            (j for nbrs in level.adjacency for j in nbrs), dtype=np.int64, count=indptr[-1]
        )
        data = np.ones(indptr[-1], dtype=np.int8)
        mat = csr_matrix((data, indices, indptr), shape=(level.vcount, level.vcount))
        level._cache["csr"] = mat
    return mat


def bfs_distance(level: GraphLevel, sources=None, threads: int = 1) -> DistanceTable:
    """Exact hop distances from the given source vertices (all, if omitted).

    Sources may be vertices or indices.  With ``threads`` > 1, source chunks
    are dispatched to a worker pool (the sparse search releases the GIL) and
    rows are reassembled in source order, so results never depend on the
    thread count.  Raises :class:`DisconnectedGraphError` if any vertex is
    unreachable, carrying the offending component.
    """
    if sources is None:
        idx = list(range(level.vcount))
        complete = True
    else:
        idx = [s if isinstance(s, int) else level.index[s] for s in sources]
        complete = False
    if level.vcount == 0:
        return DistanceTable(level.n, idx, np.zeros((0, 0), dtype=np.int16), complete)

    mat = _csr(level)
    if threads > 1 and len(idx) >= 4 * threads:
        from concurrent.futures import ThreadPoolExecutor

        chunks = [idx[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    lambda c: csgraph.shortest_path(mat, method="D", unweighted=True, indices=c),
                    chunks,
                )
            )
        d = np.empty((len(idx), level.vcount))
        for t, part in enumerate(parts):
            d[t::threads] = np.atleast_2d(part)
    else:
        d = csgraph.shortest_path(mat, method="D", unweighted=True, indices=idx)
    d = np.atleast_2d(d)
    if np.isinf(d).any():
        labels = csgraph.connected_components(_csr(level), directed=False)[1]
        src_row = int(np.argwhere(np.isinf(d))[0][0])
        comp = labels[idx[src_row]]
        component = [level.vertices[i] for i in np.nonzero(labels == comp)[0]]
        raise DisconnectedGraphError(
            f"level {level.n} is disconnected ({len(component)} vertices in one component)",
            component,
        )
    return DistanceTable(level.n, idx, d.astype(np.int16), complete)


def all_pairs(level: GraphLevel, cap: int = APSP_DEFAULT_CAP, threads: int = 1) -> DistanceTable:
    """Memoized complete distance table; refuses levels above ``cap`` vertices."""
    table = level._cache.get("apsp")
    if table is None:
        if level.vcount > cap:
            from .errors import BudgetExceeded

            raise BudgetExceeded(
                f"all-pairs table for {level.vcount} vertices exceeds cap {cap}",
                predicted=level.vcount,
                cap=cap,
            )
        table = bfs_distance(level, threads=threads)
        level._cache["apsp"] = table
    return table


def distance(level: GraphLevel, x: Vertex, y: Vertex) -> int:
    """Hop distance between two vertices of the level."""
    i, j = level.index[x], level.index[y]
    table = level._cache.get("apsp")
    if table is not None:
        return int(table.dist[i, j])
    if level.vcount <= APSP_DEFAULT_CAP:
        return int(all_pairs(level).dist[i, j])
    return bfs_distance(level, [i]).get(i, j)


@dataclass
class DiameterReport:
    n: int
    expected: int
    diameter: int | None
    leaf_pairs_ok: bool
    leaf_ecc_ok: bool
    mode: str  # "full" or "leaf-only"
    ok: bool


def diameter_check(level: GraphLevel, cap: int = APSP_DEFAULT_CAP) -> DiameterReport:
    """Verify the diameter is 2^(n-1) and that every leaf pair realizes it.

    Within ``cap`` the diameter is computed from the full table; above it the
    check downgrades to leaf-based evidence (every leaf eccentricity equals
    the expected diameter, which bounds the diameter from below) and is
    flagged ``leaf-only``.
    """
    n, n0 = level.n, level.n0
    if n0 < 2 or n < 1:
        raise ValueError("diameter check needs at least two leaves and level >= 1")
    expected = 2 ** (n - 1)
    leaf_idx = list(range(n0))
    leaf_table = bfs_distance(level, leaf_idx)
    leaf_block = leaf_table.dist[:, leaf_idx]
    leaf_pairs_ok = all(
        leaf_block[i, j] == expected for i in range(n0) for j in range(n0) if i != j
    )
    leaf_ecc_ok = bool((leaf_table.dist.max(axis=1) == expected).all())
    if level.vcount <= cap:
        diam = int(all_pairs(level).dist.max())
        return DiameterReport(
            n, expected, diam, leaf_pairs_ok, leaf_ecc_ok, "full",
            ok=leaf_pairs_ok and leaf_ecc_ok and diam == expected,
        )
    return DiameterReport(
        n, expected, None, leaf_pairs_ok, leaf_ecc_ok, "leaf-only",
        ok=leaf_pairs_ok and leaf_ecc_ok,
    )


def scaled_rho_n(level: GraphLevel, x: Vertex, y: Vertex) -> Fraction:
    """Hop distance rescaled by the diameter 2^(n-1); an exact dyadic value."""
    return Fraction(distance(level, x, y), 2 ** (level.n - 1))


def rho_interval(x: Vertex, y: Vertex, N: int, levels) -> RhoInterval:
    """Enclose the limiting scaled distance using the level-N metric.

    The upper bound rho_N is non-increasing in N; the lower bound applies
    the 8/2^N collapse allowance and clamps at zero.  Under that allowance,
    hop distances of at least 5 at level N certify a strictly positive
    limit.
    """
    if max(x.level, y.level) > N:
        raise ValueError(
            f"witness level {N} is below vertex levels {x.level}, {y.level}"
        )
    if N >= len(levels):
        raise ValueError(f"level {N} not built (have 0..{len(levels) - 1})")
    upper = scaled_rho_n(levels[N], x, y)
    lower = max(Fraction(0), upper - Fraction(8, 2**N))
    return RhoInterval(lower, upper, N)


@dataclass
class AdditiveErrorReport:
    n: int
    pairs_checked: int
    doubling_violations: int  # 2 d_{n-1} <= d_n + 4 failures
    halving_violations: int   # d_n <= 2 d_{n-1} failures
    max_gap: int              # max over pairs of 2 d_{n-1} - d_n
    cone_quadruples: int
    cone_violations: int      # exact two-path formula failures
    mode: str


def additive_error_check(
    n: int, levels, samples: int = 10_000, seed: int = 0, exhaustive_below: int = 6
) -> AdditiveErrorReport:
    """Check the step-to-step distance relations between levels n-1 and n.

    Verified for every pair one level down: doubling never gains
    (d_n <= 2 d_{n-1}) and loses at most 4 hops (2 d_{n-1} <= d_n + 4).
    Both hold exhaustively through level 6; the loss bound fails at level 7
    (probe script), so treat violation counts as findings, not bugs.  For
    cone midpoints p = m(x, x'), q = m(y, y') over edges {x, x'}, {y, y'},
    the check also compares d_n(p, q) with the better of the two straight
    pairings of endpoint distances one level down (equal through level 5,
    undercut from level 6 on); quadruples are exhaustive for small n and
    sampled with a fixed seed above ``exhaustive_below``.
    """
    prev, cur = levels[n - 1], levels[n]
    dp = all_pairs(prev).dist
    dc = all_pairs(cur).dist
    prev_in_cur = np.array([cur.index[v] for v in prev.vertices], dtype=np.int64)
    sub = dc[np.ix_(prev_in_cur, prev_in_cur)].astype(np.int64)
    dpl = dp.astype(np.int64)

    doubling_violations = int((2 * dpl > sub + 4).sum()) // 2
    halving_violations = int((sub > 2 * dpl).sum()) // 2
    max_gap = int((2 * dpl - sub).max()) if prev.vcount else 0
    pairs_checked = prev.vcount * (prev.vcount - 1) // 2

    edges = list(prev.edges())
    quad_count = len(edges) * len(edges)
    if n <= exhaustive_below or quad_count <= samples:
        pairs = ((e, f) for e in edges for f in edges)
        mode = "exhaustive"
        total = quad_count
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(edges), rng.choice(edges)) for _ in range(samples))
        mode = "sampled"
        total = samples

    cone_violations = 0
    pv = prev.vertices
    for (ix, ixp), (iy, iyp) in pairs:
        p = midpoint(pv[ix], pv[ixp])
        q = midpoint(pv[iy], pv[iyp])
        lhs = int(dc[cur.index[p], cur.index[q]])
        rhs = min(
            int(dp[ix, iy]) + int(dp[ixp, iyp]),
            int(dp[ix, iyp]) + int(dp[ixp, iy]),
        )
        if lhs != rhs:
            cone_violations += 1
    return AdditiveErrorReport(
        n, pairs_checked, doubling_violations, halving_violations, max_gap,
        total, cone_violations, mode,
    )


def delta_coordinates(levels, n: int) -> dict[Vertex, tuple[Fraction, ...]]:
    """Barycentric simplex coordinates: leaves at the corners, each pair at
    the average of its children.  Exact dyadic arithmetic throughout."""
    n0 = levels[0].n0
    coords: dict[Vertex, tuple[Fraction, ...]] = {}
    if n >= 1:
        for i, v in enumerate(levels[1].vertices):
            coords[v] = tuple(Fraction(1 if j == i else 0) for j in range(n0))
    for lvl in range(2, n + 1):
        prev_count = levels[lvl - 1].vcount
        for v in levels[lvl].vertices[prev_count:]:
            a, b = coords[v.lo], coords[v.hi]
            coords[v] = tuple((a[j] + b[j]) / 2 for j in range(n0))
    return coords


class _AffineTarget:
    """Affine midpoints over exact rational coordinates in R^dim."""

    def __init__(self, dim: int):
        self.dim = dim

    def point(self, coords) -> tuple[Fraction, ...]:
        p = tuple(Fraction(c) for c in coords)
        if len(p) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(p)}")
        return p

    def midpoint(self, p, q):
        return tuple((a + b) / 2 for a, b in zip(p, q))


class EuclideanTarget(_AffineTarget):
    """R^dim with the Euclidean metric; comparisons use exact squared distances."""

    kind = "squared"

    def measure(self, p, q) -> Fraction:
        return sum((a - b) ** 2 for a, b in zip(p, q))

    def distance(self, p, q) -> float:
        return float(self.measure(p, q)) ** 0.5

    def dist_le(self, p, q, bound: Fraction) -> bool:
        return self.measure(p, q) <= bound * bound

    def conical_ok(self, x, y, z) -> bool:
        return 4 * self.measure(self.midpoint(x, y), self.midpoint(x, z)) <= self.measure(y, z)


class SupNormTarget(_AffineTarget):
    """R^dim with the sup norm; all comparisons are exact rationals."""

    kind = "linear"

    def measure(self, p, q) -> Fraction:
        return max(abs(a - b) for a, b in zip(p, q))

    def distance(self, p, q) -> float:
        return float(self.measure(p, q))

    def dist_le(self, p, q, bound: Fraction) -> bool:
        return self.measure(p, q) <= bound

    def conical_ok(self, x, y, z) -> bool:
        return 2 * self.measure(self.midpoint(x, y), self.midpoint(x, z)) <= self.measure(y, z)


@dataclass
class PushForwardReport:
    images: dict
    lipschitz_bound: float
    lipschitz_empirical: float
    edges_checked: int
    ok: bool


def push_forward(
    levels, target, leaf_images, n: int | None = None,
    conical_samples: int = 64, seed: int = 0,
) -> PushForwardReport:
    """Map the hierarchy into a midpoint space by recursion on terms.

    Leaves go to the given image points; a pair goes to the target midpoint
    of its children's images.  The map is L-Lipschitz for L the largest
    pairwise distance between leaf images (distinct leaves sit at scaled
    distance one), which is verified edge by edge with exact arithmetic.

    The target's midpoint is spot-checked on sampled image triples; a triple
    violating the half-distance axiom raises :class:`ConicalAxiomError`.
    """
    if n is None:
        n = len(levels) - 1
    n0 = levels[0].n0
    if len(leaf_images) != n0:
        raise ValueError(f"need {n0} leaf images, got {len(leaf_images)}")
    points = [target.point(p) for p in leaf_images]

    images: dict[Vertex, tuple] = {}
    for i, v in enumerate(levels[1].vertices):
        images[v] = points[i]
    for lvl in range(2, n + 1):
        prev_count = levels[lvl - 1].vcount
        for v in levels[lvl].vertices[prev_count:]:
            images[v] = target.midpoint(images[v.lo], images[v.hi])

    rng = random.Random(seed)
    pool = list(images.values())
    for _ in range(conical_samples):
        x, y, z = (rng.choice(pool) for _ in range(3))
        if target.midpoint(x, x) != x:
            raise ConicalAxiomError("target midpoint is not idempotent", witness=(x,))
        if target.midpoint(x, y) != target.midpoint(y, x):
            raise ConicalAxiomError("target midpoint is not symmetric", witness=(x, y))
        if not target.conical_ok(x, y, z):
            raise ConicalAxiomError(
                "target midpoint violates the half-distance axiom", witness=(x, y, z)
            )

    # L as an exact measure: max pairwise measure of the leaf images
    l_measure = Fraction(0)
    for i in range(n0):
        for j in range(i + 1, n0):
            l_measure = max(l_measure, target.measure(points[i], points[j]))

    level = levels[n]
    rho_edge = Fraction(1, 2 ** (n - 1))
    edge_cap = l_measure * rho_edge**2 if target.kind == "squared" else l_measure * rho_edge
    worst = Fraction(0)
    edges_checked = 0
    ok = True
    for i, j in level.edges():
        m_val = target.measure(images[level.vertices[i]], images[level.vertices[j]])
        if m_val > edge_cap:
            ok = False
        worst = max(worst, m_val)
        edges_checked += 1

    if target.kind == "squared":
        lipschitz_emp = (float(worst) ** 0.5) / float(rho_edge)
        lipschitz_bound = float(l_measure) ** 0.5
    else:
        lipschitz_emp = float(worst) / float(rho_edge)
        lipschitz_bound = float(l_measure)
    return PushForwardReport(images, lipschitz_bound, lipschitz_emp, edges_checked, ok)


def shortest_path_between(level: GraphLevel, x: Vertex, y: Vertex, seed: int = 0) -> list[Vertex]:
    """One shortest path from x to y, deterministic given the seed.

    Walks greedily from y back towards x along distance-decreasing neighbors
    of a BFS table rooted at x, picking uniformly among candidates.
    """
    i, j = level.index[x], level.index[y]
    dist_row = bfs_distance(level, [i]).dist[0]
    rng = random.Random((seed, i, j).__hash__())
    path = [j]
    cur = j
    while cur != i:
        cands = [k for k in level.adjacency[cur] if dist_row[k] == dist_row[cur] - 1]
        cur = rng.choice(cands)
        path.append(cur)
    path.reverse()
    return [level.vertices[k] for k in path]
