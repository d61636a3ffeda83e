"""Graph powers, clique search, Turán checks, separated-set certificates, and
recursive edge-count bound certificates.

Everything that certifies a property is re-verified from first principles
before it is returned: clique outputs are checked pairwise against the
adjacency oracle, separation certificates re-check every hop distance by
BFS, and bound certificates carry the full decomposition so the closed-form
inequality can be replayed from counts alone.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, WitnessChainError
from .graphs import GraphLevel
from .metrics import all_pairs, bfs_distance
from .vertex import Vertex, midpoint

__all__ = [
    "PowerGraph",
    "power_graph",
    "power_edge_count",
    "power_edge_counts_upto",
    "CliqueResult",
    "clique_search",
    "SeparationCertificate",
    "separated_set",
    "turan_check",
    "turan_consistency",
    "noncompactness_ratio",
    "ratio_trend",
    "edge_witnesses",
    "split_path",
    "split_shortest_path",
    "split_between",
    "SplitEstimate",
    "estimate_split",
    "EdgeBoundCertificate",
    "bound_certificate",
    "parameter_check",
]


@dataclass
class PowerGraph:
    """The m-th power of a level graph, adjacency kept implicit.

    Distinct vertices are adjacent iff their hop distance is between 1 and m;
    the zeroth power has no edges.  Adjacency is answered from the level's
    distance table rather than materialized edge lists.
    """

    level: GraphLevel
    m: int
    complement: bool = False
    _dist: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("power exponent must be non-negative")
        if self._dist is None:
            self._dist = all_pairs(self.level).dist

    @property
    def vcount(self) -> int:
        return self.level.vcount

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            return False
        within = 1 <= self._dist[i, j] <= self.m
        return not within if self.complement else within

    def neighbor_mask(self, i: int) -> np.ndarray:
        row = self._dist[i]
        within = (row >= 1) & (row <= self.m)
        if self.complement:
            mask = ~within
            mask[i] = False
            return mask
        return within

    def edge_count(self) -> int:
        d = self._dist
        within = int(((d >= 1) & (d <= self.m)).sum()) // 2
        if self.complement:
            n = self.vcount
            return n * (n - 1) // 2 - within
        return within

    def bitsets(self) -> list[int]:
        """Adjacency rows packed as Python integers (bit i = neighbor i)."""
        rows = []
        for i in range(self.vcount):
            mask = self.neighbor_mask(i)
            bits = np.packbits(mask, bitorder="little").tobytes()
            rows.append(int.from_bytes(bits, "little"))
        return rows


def power_graph(level: GraphLevel, m: int, complement: bool = False) -> PowerGraph:
    return PowerGraph(level, m, complement)


def power_edge_count(level: GraphLevel, m: int, cap: int = 5000) -> int:
    """Exact |E(G^m)| by distance counting; the zeroth power is edgeless."""
    if m == 0:
        return 0
    if level.vcount <= cap:
        return power_graph(level, m).edge_count()
    if level.vcount > 200_000:
        raise BudgetExceeded(
            f"power edge count over {level.vcount} vertices is out of reach",
            predicted=level.vcount, cap=200_000,
        )
    # mid-sized levels: truncated searches, one source at a time
    from scipy.sparse.csgraph import dijkstra
    from .metrics import _csr

    total = 0
    mat = _csr(level)
    for i in range(level.vcount):
        d = dijkstra(mat, unweighted=True, indices=i, limit=m)
        total += int(((d >= 1) & (d <= m)).sum())
    return total // 2


def power_edge_counts_upto(level: GraphLevel, m_max: int) -> list[int]:
    """|E(G^m)| for m = 0..m_max in one pass over the distance histogram."""
    d = all_pairs(level).dist
    hist = np.bincount(d.ravel(), minlength=m_max + 2)
    counts = [0]
    running = 0
    for m in range(1, m_max + 1):
        running += int(hist[m]) if m < len(hist) else 0
        counts.append(running // 2)
    return counts


# ---------------------------------------------------------------------------
# clique search


@dataclass
class CliqueResult:
    vertices: list[int]
    exact: bool        # ran the exact branch-and-bound
    completed: bool    # exact search finished inside its time cap
    nodes: int
    elapsed: float
    fallback: bool = False  # exact requested but timed out; greedy result


def _greedy_color_order(cands: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set; returns vertices ordered by
    color class with their color numbers (a clique upper bound)."""
    order, colors = [], []
    color = 0
    rest = cands
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            bit = 1 << v
            order.append(v)
            colors.append(color)
            avail &= ~bit
            avail &= ~adj[v]
            rest &= ~bit
    return order, colors


def _max_clique_exact(nv: int, adj: list[int], time_cap: float):
    best: list[int] = []
    deadline = time.monotonic() + time_cap
    nodes = 0
    timed_out = False

    def expand(clique: list[int], cands: int):
        nonlocal best, nodes, timed_out
        if timed_out:
            return
        nodes += 1
        if nodes % 4096 == 0 and time.monotonic() > deadline:
            timed_out = True
            return
        order, colors = _greedy_color_order(cands, adj)
        for pos in range(len(order) - 1, -1, -1):
            if len(clique) + colors[pos] <= len(best):
                return
            v = order[pos]
            clique.append(v)
            sub = cands & adj[v]
            if sub:
                expand(clique, sub)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cands &= ~(1 << v)

    full = (1 << nv) - 1
    expand([], full)
    return best, nodes, timed_out


def _greedy_cliques(nv: int, adj: list[int], seed: int, restarts: int = 64) -> list[int]:
    rng = random.Random(seed)
    best: list[int] = []
    degs = [adj[v].bit_count() for v in range(nv)]
    for _ in range(restarts):
        start = rng.randrange(nv)
        clique = [start]
        cands = adj[start]
        while cands:
            # prefer high-degree candidates, with seeded tie-breaking
            choices = []
            c = cands
            while c:
                v = (c & -c).bit_length() - 1
                choices.append(v)
                c &= c - 1
            top = max(degs[v] for v in choices)
            pool = [v for v in choices if degs[v] == top]
            v = pool[rng.randrange(len(pool))]
            clique.append(v)
            cands &= adj[v]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def clique_search(
    graph: PowerGraph | list[int],
    mode: str = "exact",
    seed: int = 0,
    time_cap: float = 60.0,
    nv: int | None = None,
) -> CliqueResult:
    """Find a large clique; exact mode is branch-and-bound with a coloring
    bound, greedy mode repeated seeded maximal cliques.

    The returned vertex set is re-verified pairwise against the adjacency
    before return, so a buggy search can never produce an unsound result.
    Exact mode falls back to greedy (flagged) when the time cap is hit.
    """
    if isinstance(graph, PowerGraph):
        adj = graph.bitsets()
        nv = graph.vcount
    else:
        adj = graph
        if nv is None:
            nv = len(adj)
    if nv == 0:
        return CliqueResult([], mode == "exact", True, 0, 0.0)

    t0 = time.monotonic()
    if mode == "exact":
        best, nodes, timed_out = _max_clique_exact(nv, adj, time_cap)
        if timed_out:
            greedy = _greedy_cliques(nv, adj, seed)
            if len(greedy) > len(best):
                best = greedy
            result = CliqueResult(sorted(best), True, False, nodes, time.monotonic() - t0, True)
        else:
            result = CliqueResult(sorted(best), True, True, nodes, time.monotonic() - t0)
    elif mode == "greedy":
        best = _greedy_cliques(nv, adj, seed)
        result = CliqueResult(sorted(best), False, True, 0, time.monotonic() - t0)
    else:
        raise ValueError(f"unknown clique mode {mode!r}")

    for a in result.vertices:
        for b in result.vertices:
            if a < b and not (adj[a] >> b) & 1:
                raise AssertionError(f"clique output not pairwise adjacent: {a}, {b}")
    return result


# ---------------------------------------------------------------------------
# separated sets


@dataclass
class SeparationCertificate:
    """Vertices pairwise far apart at level n, hence in the limit space.

    Pairwise hop distance at least m+1 yields a limiting distance of at
    least (2m-6)/2^n >= m/2^n whenever m >= 6; the headline ``rho_lower`` is
    the round m/2^n and ``rho_lower_refined`` the sharper value.
    ``min_pairwise_distance`` is re-measured by BFS, independent of the
    clique search that proposed the set.
    """

    n: int
    m: int
    vertices: list[Vertex]
    rho_lower: Fraction
    rho_lower_refined: Fraction
    min_pairwise_distance: int | None
    pairwise_distances: list[int]
    mode: str
    exact_maximum: bool

    @property
    def cardinality(self) -> int:
        return len(self.vertices)

    @property
    def verified(self) -> bool:
        return (
            self.min_pairwise_distance is None
            or self.min_pairwise_distance >= self.m + 1
        )


def separated_set(
    levels, n: int, m: int, mode: str = "exact", seed: int = 0, time_cap: float = 60.0
) -> SeparationCertificate:
    """Certificate from a clique in the complement of the m-th power.

    Requires m >= 6 (below that the limit bound (2m-6)/2^n degenerates).
    Every returned pair is re-verified by fresh BFS runs.
    """
    if m < 6:
        raise ValueError(f"separation needs power m >= 6, got {m}")
    level = levels[n]
    comp = power_graph(level, m, complement=True)
    if comp.edge_count() == 0:
        verts = [level.vertices[0]] if level.vcount else []
        return SeparationCertificate(
            n, m, verts, Fraction(m, 2**n), Fraction(2 * m - 6, 2**n), None, [], mode, True
        )
    result = clique_search(comp, mode=mode, seed=seed, time_cap=time_cap)
    chosen = [level.vertices[i] for i in result.vertices]

    # independent re-verification by BFS from each chosen vertex
    pairwise = []
    idxs = [level.index[v] for v in chosen]
    for a_pos, i in enumerate(idxs):
        row = bfs_distance(level, [i]).dist[0]
        for j in idxs[a_pos + 1 :]:
            pairwise.append(int(row[j]))
    min_pd = min(pairwise) if pairwise else None
    if min_pd is not None and min_pd < m + 1:
        raise AssertionError(
            f"clique output failed BFS re-verification: min pairwise distance {min_pd} <= {m}"
        )
    return SeparationCertificate(
        n, m, chosen, Fraction(m, 2**n), Fraction(2 * m - 6, 2**n), min_pd, sorted(pairwise),
        mode, result.exact and result.completed,
    )


# ---------------------------------------------------------------------------
# Turán


def turan_check(vcount: int, ecount: int, r: int) -> bool:
    """True iff ecount <= (1 - 1/r) vcount^2 / 2, with exact rationals."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return Fraction(ecount) <= (1 - Fraction(1, r)) * Fraction(vcount**2, 2)


def turan_consistency(vcount: int, ecount: int, clique_size: int) -> dict:
    """How a found clique number sits against the edge-count bounds.

    ``holds_at_clique``: with r equal to the exact clique number the bound
    must hold (the graph has no larger clique, so it is subject to the
    bound).  ``violated_below``: whether the bound already fails one step
    lower, which would force the found clique from the edge count alone.
    """
    out = {
        "vcount": vcount,
        "ecount": ecount,
        "clique_size": clique_size,
        "holds_at_clique": None,
        "violated_below": None,
    }
    if clique_size >= 1:
        out["holds_at_clique"] = turan_check(vcount, ecount, clique_size)
    if clique_size >= 2:
        out["violated_below"] = not turan_check(vcount, ecount, clique_size - 1)
    return out


# ---------------------------------------------------------------------------
# non-compactness ratio


@dataclass
class RatioPoint:
    n: int
    k: int
    m: int
    vcount: int
    power_ecount: int
    ratio: Fraction

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)


def noncompactness_ratio(levels, n: int, k: int) -> RatioPoint:
    """Exact |E(G_n^m)| / |V_n|^2 for m = 2^(n-k)."""
    if n < k:
        raise ValueError(f"need n >= k so the power exponent is at least 1 (n={n}, k={k})")
    m = 2 ** (n - k)
    level = levels[n]
    ec = power_edge_count(level, m)
    return RatioPoint(n, k, m, level.vcount, ec, Fraction(ec, level.vcount**2))


def ratio_trend(levels, k: int, n_range=None) -> list[RatioPoint]:
    if n_range is None:
        n_range = range(k, len(levels))
    return [noncompactness_ratio(levels, n, k) for n in n_range]


# ---------------------------------------------------------------------------
# path splitting


def _partner(z: Vertex, v: Vertex) -> Vertex | None:
    """u with m(v, u) = z, if one exists."""
    if z is v:
        return z
    if not z.is_leaf:
        if z.lo is v:
            return z.hi
        if z.hi is v:
            return z.lo
    return None


def edge_witnesses(levels, n: int, x: Vertex, y: Vertex) -> list[tuple[Vertex, Vertex, Vertex]]:
    """All cone witnesses (v, u, w) of an edge: x = m(v, u), y = m(v, w),
    with v one level down and {u, w} an edge there."""
    prev = levels[n - 1]
    cands = set()
    for z in (x, y):
        if z in prev.index:
            cands.add(z)
        if not z.is_leaf:
            cands.update((z.lo, z.hi))
    out = []
    for v in cands:
        if v not in prev.index:
            continue
        u = _partner(x, v)
        w = _partner(y, v)
        if u is None or w is None or u is w:
            continue
        if u not in prev.index or w not in prev.index:
            continue
        iu, iw = prev.index[u], prev.index[w]
        if iw in prev.adjacency[iu]:
            out.append((v, u, w))
    out.sort(key=lambda t: (t[0].key(), t[1].key(), t[2].key()))
    return out


@dataclass
class SplitPathResult:
    gamma: list[Vertex]
    eta: list[Vertex]

    @property
    def total_length(self) -> int:
        return len(self.gamma) - 1 + len(self.eta) - 1


def split_path(levels, n: int, path: list[Vertex], witnesses) -> SplitPathResult:
    """Decompose a level-n path into two level-(n-1) strands.

    Witness i must present path[i] = m(v, u) and path[i+1] = m(v, w).  The
    strand rule advances one strand per step from the tail vertex of the new
    witness; if neither strand tail matches, the chain is inconsistent and a
    :class:`WitnessChainError` reports the failing index.  Strand endpoints
    recombine to the path endpoints, and after dropping repeated entries the
    strand lengths sum to the path length.
    """
    if len(path) == 1:
        z = path[0]
        if z.is_leaf:
            return SplitPathResult([z], [z])
        return SplitPathResult([z.lo], [z.hi])
    if len(witnesses) != len(path) - 1:
        raise ValueError("need exactly one witness per path edge")
    for i, (v, u, w) in enumerate(witnesses):
        if midpoint(v, u) is not path[i] or midpoint(v, w) is not path[i + 1]:
            raise WitnessChainError(f"witness {i} does not present its edge", index=i)

    v1, u1, w1 = witnesses[0]
    a = [v1]          # strand of cone apexes
    b = [u1, w1]      # strand of base endpoints
    for i in range(1, len(witnesses)):
        _, u, w = witnesses[i]
        if u is a[-1]:
            a.append(w)
            b.append(b[-1])
        elif u is b[-1]:
            a.append(a[-1])
            b.append(w)
        else:
            raise WitnessChainError(
                f"witness {i} connects to neither strand tail", index=i
            )
        if midpoint(a[-1], b[-1]) is not path[i + 1]:
            raise WitnessChainError(
                f"strand tails fail to recombine to path vertex {i + 1}", index=i
            )

    gamma = _dedup(a)
    eta = _dedup(b)
    if midpoint(gamma[0], eta[0]) is not path[0] or midpoint(gamma[-1], eta[-1]) is not path[-1]:
        raise WitnessChainError("strand endpoints do not recombine to the path endpoints", index=len(witnesses))
    return SplitPathResult(gamma, eta)


def _dedup(seq):
    out = [seq[0]]
    for v in seq[1:]:
        if v is not out[-1]:
            out.append(v)
    return out


def split_shortest_path(levels, n: int, path: list[Vertex], max_nodes: int = 1_000_000) -> SplitPathResult:
    """Split a path by searching the witness space with backtracking.

    A witness extends the chain only when its base tail matches one strand
    tail and its apex the other, which keeps the strand recombination
    invariant and prunes dead branches immediately.
    """
    if len(path) == 1:
        return split_path(levels, n, path, [])
    options = [edge_witnesses(levels, n, path[i], path[i + 1]) for i in range(len(path) - 1)]
    for i, opts in enumerate(options):
        if not opts:
            raise WitnessChainError(f"edge {i} has no cone witness", index=i)
    budget = [max_nodes]

    def search(i, a_tail, b_tail, chosen):
        if i == len(options):
            return chosen
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        for v, u, w in options[i]:
            if u is a_tail and v is b_tail:
                got = search(i + 1, w, b_tail, chosen + [(v, u, w)])
                if got is not None:
                    return got
            if u is b_tail and v is a_tail:
                got = search(i + 1, a_tail, w, chosen + [(v, u, w)])
                if got is not None:
                    return got
        return None

    chain = None
    for v, u, w in options[0]:
        chain = search(1, v, w, [(v, u, w)])
        if chain is not None:
            break
    if chain is None:
        raise WitnessChainError("no consistent witness chain found", index=-1)
    return split_path(levels, n, path, chain)


def split_between(levels, n: int, x: Vertex, y: Vertex):
    """Find a shortest x-y path that admits a consistent witness chain.

    Not every shortest path supports the strand recursion: a path through a
    lower-level vertex can collapse both strands onto it while the next edge
    needs the children presentation.  Searching the geodesic DAG jointly
    with the witness choice always recovers some shortest path that splits.
    Returns (path, SplitPathResult).
    """
    level = levels[n]
    ix, iy = level.index[x], level.index[y]
    dx = bfs_distance(level, [ix]).dist[0]
    dy = bfs_distance(level, [iy]).dist[0]
    total = int(dx[iy])
    if total == 0:
        return [x], split_path(levels, n, [x], [])

    seen = set()

    def dfs(cur: int, at, bt, path, chain):
        if cur == iy:
            return path, chain
        key = (cur, at, bt)
        if key in seen:
            return None
        seen.add(key)
        for nxt in level.adjacency[cur]:
            if dx[nxt] != dx[cur] + 1 or dy[nxt] != dy[cur] - 1:
                continue
            here, there = level.vertices[cur], level.vertices[nxt]
            for v, u, w in edge_witnesses(levels, n, here, there):
                if at is None:
                    got = dfs(nxt, v, w, path + [there], chain + [(v, u, w)])
                    if got is not None:
                        return got
                else:
                    if u is at and v is bt:
                        got = dfs(nxt, w, bt, path + [there], chain + [(v, u, w)])
                        if got is not None:
                            return got
                    if u is bt and v is at:
                        got = dfs(nxt, at, w, path + [there], chain + [(v, u, w)])
                        if got is not None:
                            return got
        return None

    found = dfs(ix, None, None, [x], [])
    if found is None:
        raise WitnessChainError(
            f"no shortest path from {x} to {y} admits a consistent witness chain", index=-1
        )
    path, chain = found
    return path, split_path(levels, n, path, chain)


# ---------------------------------------------------------------------------
# recursive edge-count bounds


@dataclass
class SplitEstimate:
    """The one-level bound |E(G_n^m)| <= 2m |E(G_{n-1}^a)| |E(G_{n-1}^b)|.

    (a, b) maximizes the product over all splits a + b = m, with the
    zeroth-power count taken as the vertex count inside this arithmetic;
    ties pick the smallest a.  The balanced split's value is reported for
    comparison only; it is not a proven bound.
    """

    n: int
    m: int
    a: int
    b: int
    max_product: int
    bound: int
    balanced_value: int | None


def _power_counts_with_convention(level: GraphLevel, m_max: int) -> list[int]:
    counts = power_edge_counts_upto(level, m_max)
    counts[0] = level.vcount  # bound arithmetic counts the zeroth power as |V|
    return counts


def estimate_split(levels, n: int, m: int) -> SplitEstimate:
    """Maximizing split for the one-level power edge bound.

    Whenever the level-n power count is itself computable, the bound is
    checked against it on the spot.
    """
    if m < 1:
        raise ValueError("power exponent must be at least 1")
    prev = levels[n - 1]
    counts = _power_counts_with_convention(prev, m)
    best_val, best_a = -1, 0
    for a in range(m + 1):
        val = counts[a] * counts[m - a]
        if val > best_val:
            best_val, best_a = val, a
    bound = 2 * m * best_val
    if n < len(levels) and levels[n].vcount <= 5000:
        actual = power_edge_count(levels[n], m)
        if actual > bound:
            raise AssertionError(
                f"split bound {bound} under the exact count {actual} at (n={n}, m={m})"
            )
    balanced = 2 * m * counts[m // 2] * counts[m - m // 2]
    return SplitEstimate(n, m, best_a, m - best_a, best_val, bound, balanced)


@dataclass
class EdgeBoundCertificate:
    """Replayable decomposition bounding |E(G_n^m)| for m = 2^(n-k).

    Repeatedly replacing a power count one level up by the split bound (or a
    zero-exponent count by the vertex count) terminates at level k with K
    positive parts m_1..m_K summing to m, and k_i vertex-count factors
    |V_{n-i}| collected at depth i.  The weighted exponent identity
    sum_i k_i 2^(nbar - i) = m - K must hold, and the accumulated product of
    scalars is dominated by 32^m, giving the closed-form bound.
    """

    n: int
    k: int
    m: int
    K: int
    parts: list[int]
    k_exponents: list[int]   # index i-1 holds k_i, i = 1..n-k
    scalar_product: int
    base_counts: list[int]   # |E(G_k^{m_i})| aligned with parts
    vcounts: list[int]       # |V_{n-i}| aligned with k_exponents
    exact_value: int         # scalars * prod base_counts * prod vcounts^{k_i}
    closed_value: int        # 32^m   * prod base_counts * prod vcounts^{k_i}

    def sum_of_exponents_ok(self) -> bool:
        nbar = self.n - self.k
        return sum(
            ki * 2 ** (nbar - i) for i, ki in enumerate(self.k_exponents, start=1)
        ) == self.m - self.K

    def exponent_ranges_ok(self) -> bool:
        return all(
            0 <= ki <= 2**i - 1 for i, ki in enumerate(self.k_exponents, start=1)
        )

    def parts_ok(self) -> bool:
        return (
            1 <= self.K <= self.m
            and len(self.parts) == self.K
            and all(p >= 1 for p in self.parts)
            and sum(self.parts) == self.m
        )

    def structurally_ok(self) -> bool:
        return (
            self.parts_ok()
            and self.exponent_ranges_ok()
            and self.sum_of_exponents_ok()
            and self.exact_value <= self.closed_value
        )


def bound_certificate(levels, n: int, k: int) -> EdgeBoundCertificate:
    """Run the replacement recursion from level n down to level k.

    Needs built levels k..n-1 (their power counts steer each split); level n
    itself is never touched, so certificates reach one level beyond what is
    feasible to build.
    """
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if max(k, n - 1) >= len(levels):
        raise ValueError(
            f"levels k..n-1 = {k}..{max(k, n - 1)} must be built (have 0..{len(levels) - 1})"
        )
    m_n = 2 ** (n - k)
    nbar = n - k

    k_exponents = [0] * nbar
    scalar_product = 1
    parts: list[int] = []
    # terms are (level j, exponent m); zero exponents convert to |V_j| factors
    stack = [(n, m_n)]
    while stack:
        j, m = stack.pop()
        if m == 0:
            k_exponents[n - j - 1] += 1  # a |V_j| factor at depth n - j
            continue
        if j == k:
            parts.append(m)
            continue
        split = estimate_split(levels, j, m)
        scalar_product *= 2 * m
        stack.append((j - 1, split.a))
        stack.append((j - 1, split.b))
    parts.sort()

    base = power_edge_counts_upto(levels[k], max(parts) if parts else 0)
    base_counts = [base[p] for p in parts]
    vcounts = [levels[n - i].vcount for i in range(1, nbar + 1)]

    prod_base = 1
    for c in base_counts:
        prod_base *= c
    prod_v = 1
    for ki, vc in zip(k_exponents, vcounts):
        prod_v *= vc**ki
    return EdgeBoundCertificate(
        n=n, k=k, m=m_n, K=len(parts), parts=parts, k_exponents=k_exponents,
        scalar_product=scalar_product, base_counts=base_counts, vcounts=vcounts,
        exact_value=scalar_product * prod_base * prod_v,
        closed_value=32**m_n * prod_base * prod_v,
    )


# ---------------------------------------------------------------------------
# parameter feasibility


@dataclass
class ParameterReport:
    n0: int
    epsilon: Fraction
    k: int
    alpha: Fraction
    vcount_k: int
    ecount_k: int
    ecount_exact: bool
    cond_inverse_vcount: bool   # 1/|V_k| <= (2 alpha)^(-1/eps)
    cond_edge_density: bool     # |E_k|/|V_k|^(1+eps) <= (2 alpha)^(-1/eps)
    passes: bool
    smallest_passing_k: int | None
    scan_max_k: int
    ratio_targets: list        # (n, m, ratio, target, ratio <= target) rows


def _threshold_conditions(vcount: int, ecount: int, epsilon: Fraction, alpha: Fraction):
    """Both feasibility conditions by cross-multiplied integer comparisons."""
    p, q = epsilon.numerator, epsilon.denominator
    two_alpha = 2 * alpha
    an, ad = two_alpha.numerator, two_alpha.denominator
    # 1/V <= (2a)^(-1/eps)  <=>  (2a)^q <= V^p
    cond_a = an**q <= vcount**p * ad**q
    # E/V^(1+eps) <= (2a)^(-1/eps)  <=>  E^(pq) (2a)^(q^2) <= V^((p+q)p)
    lhs = ecount ** (p * q) * an ** (q * q)
    rhs = vcount ** ((p + q) * p) * ad ** (q * q)
    cond_b = lhs <= rhs
    return cond_a, cond_b


def parameter_check(
    n0: int,
    epsilon: Fraction,
    k: int,
    alpha: Fraction = Fraction(288),
    levels=None,
    scan_max_k: int = 24,
    scan_bit_cap: int = 1_000_000,
) -> ParameterReport:
    """Feasibility of the base level k for the threshold (2 alpha)^(-1/eps).

    Exact edge counts come from built levels; beyond them the recursion
    bound |E_n| <= |V_{n-1}| |E_{n-1}| stands in (passing with the bound is
    sufficient since the true count is smaller).  Counts grow doubly
    exponentially, so the upward scan for the smallest passing k computes
    them incrementally, stops at the first pass, and gives up once integers
    exceed ``scan_bit_cap`` bits.  Also reports, for built levels n >= k
    where the power count is feasible, whether the measured ratio
    |E(G_n^{2^(n-k)})| / |V_n|^2 is already below (1/2)^(2^(n-k)); those
    rows are informational.
    """
    if not (0 < epsilon < Fraction(1, 16)):
        raise ValueError(f"epsilon must lie strictly between 0 and 1/16, got {epsilon}")
    if k < 1:
        raise ValueError("k must be at least 1")
    exact = {}
    if levels is not None:
        exact = {lvl.n: lvl.ecount for lvl in levels if lvl.n >= 1}

    vcounts = [0, n0]
    ebounds = [0, exact.get(1, n0 * (n0 - 1) // 2)]

    def extend_to(kk):
        while len(vcounts) <= kk:
            a, b = vcounts[-1], vcounts[-2]
            vcounts.append((a + b) * (a - b + 1) // 2)
            nn = len(ebounds)
            ebounds.append(exact.get(nn, vcounts[nn - 1] * ebounds[nn - 1]))

    p, q = epsilon.numerator, epsilon.denominator

    def comparison_bits(kk):
        # size of the largest integer the cross-multiplied comparison builds
        return max(
            vcounts[kk].bit_length() * (p + q) * p,
            ebounds[kk].bit_length() * p * q + q * q * (2 * alpha).numerator.bit_length(),
        )

    max_k = max(k, scan_max_k)
    smallest = None
    for kk in range(1, max_k + 1):
        extend_to(kk)
        if comparison_bits(kk) > scan_bit_cap:
            break
        ca, cb = _threshold_conditions(vcounts[kk], ebounds[kk], epsilon, alpha)
        if ca and cb:
            smallest = kk
            break

    extend_to(k)
    if comparison_bits(k) > scan_bit_cap:
        raise BudgetExceeded(
            f"threshold comparison at level {k} exceeds {scan_bit_cap} bits",
            predicted=comparison_bits(k), cap=scan_bit_cap,
        )
    cond_a, cond_b = _threshold_conditions(vcounts[k], ebounds[k], epsilon, alpha)

    ratio_rows = []
    if levels is not None:
        for lvl in levels:
            if lvl.n >= k and lvl.n >= 1 and 0 < lvl.vcount <= 5000:
                m = 2 ** (lvl.n - k)
                ec = power_edge_count(lvl, m)
                ratio = Fraction(ec, lvl.vcount**2)
                target = Fraction(1, 2**m)
                ratio_rows.append((lvl.n, m, ratio, target, ratio <= target))

    return ParameterReport(
        n0=n0, epsilon=epsilon, k=k, alpha=alpha,
        vcount_k=vcounts[k], ecount_k=ebounds[k],
        ecount_exact=k in exact,
        cond_inverse_vcount=cond_a, cond_edge_density=cond_b,
        passes=cond_a and cond_b,
        smallest_passing_k=smallest, scan_max_k=max_k,
        ratio_targets=ratio_rows,
    )
