"""Level-by-level construction of the midpoint graph hierarchy.

Level 0 is the null graph and level 1 the complete graph on the leaf set.
Each later vertex set appends all unordered pairs of the previous one, and
two vertices are adjacent exactly when they are the two midpoints of a cone
over an edge: x = m(v, u), y = m(v, w) for some apex v and edge {u, w} one
level down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceeded
from .vertex import Vertex, leaf, midpoint

__all__ = [
    "BuildBudget",
    "GraphLevel",
    "build_levels",
    "predict_vcount",
    "predict_vcounts",
    "edge_upper_bounds",
    "check_growth",
]


@dataclass(frozen=True)
class BuildBudget:
    """Hard caps checked before a level is constructed."""

    max_vertices: int = 10_000_000
    max_edge_bound: int = 1_000_000_000


DEFAULT_BUDGET = BuildBudget()


@dataclass
class GraphLevel:
    """One sealed level: ordered vertex list plus symmetric adjacency.

    The first vcount-of-previous-level entries of ``vertices`` are exactly the
    previous level's list, and the whole list is sorted by the canonical
    vertex order.  ``adjacency[i]`` is the sorted list of neighbor indices.
    Never mutate a sealed level; the ``_cache`` slot only memoizes derived
    read-only artifacts (sparse matrix, distance tables).
    """

    n: int
    n0: int
    vertices: list[Vertex]
    index: dict[Vertex, int]
    adjacency: list[list[int]]
    vcount: int
    ecount: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def edges(self):
        """Yield each undirected edge once as an index pair (i, j), i < j."""
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                if i < j:
                    yield (i, j)

    def contains(self, v: Vertex) -> bool:
        return v in self.index

    def __repr__(self):
        return f"GraphLevel(n={self.n}, n0={self.n0}, vcount={self.vcount}, ecount={self.ecount})"


def _seal(n, n0, vertices, edge_pairs):
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = [[] for _ in vertices]
    for i, j in edge_pairs:
        adjacency[i].append(j)
        adjacency[j].append(i)
    for nbrs in adjacency:
        nbrs.sort()
    return GraphLevel(
        n=n,
        n0=n0,
        vertices=vertices,
        index=index,
        adjacency=adjacency,
        vcount=len(vertices),
        ecount=len(edge_pairs),
    )


def build_levels(n0: int, n_max: int, budget: BuildBudget = DEFAULT_BUDGET) -> list[GraphLevel]:
    """Build levels 0..n_max for the given leaf count.

    Deterministic: vertex lists are previous level first, then the new pairs
    in canonical order; adjacency is deduplicated and sorted.  Raises
    :class:`BudgetExceeded` before touching a level whose predicted vertex
    count or edge upper bound exceeds the budget.
    """
    if n0 < 0:
        raise ValueError("leaf count must be non-negative")
    # reject the whole request up front if any level is already out of reach
    predicted_all = predict_vcounts(n0, n_max)
    for n, predicted in enumerate(predicted_all):
        if predicted > budget.max_vertices:
            raise BudgetExceeded(
                f"level {n} needs {predicted} vertices, cap is {budget.max_vertices}",
                predicted=predicted,
                cap=budget.max_vertices,
            )
    levels = [_seal(0, n0, [], set())]
    if n_max == 0:
        return levels

    leaves = [leaf(i) for i in range(n0)]
    k1_edges = {(i, j) for i, j in combinations(range(n0), 2)}
    levels.append(_seal(1, n0, leaves, k1_edges))

    for n in range(2, n_max + 1):
        prev = levels[-1]
        predicted = predicted_all[n]
        edge_bound = prev.vcount * prev.ecount
        if edge_bound > budget.max_edge_bound:
            raise BudgetExceeded(
                f"level {n} edge bound {edge_bound} exceeds cap {budget.max_edge_bound}",
                predicted=edge_bound,
                cap=budget.max_edge_bound,
            )

        new = []
        for a, b in combinations(prev.vertices, 2):
            p = midpoint(a, b)
            if p not in prev.index:
                new.append(p)
        new.sort(key=Vertex.key)
        vertices = prev.vertices + new
        if len(vertices) != predicted:
            raise AssertionError(
                f"level {n}: built {len(vertices)} vertices, recursion predicts {predicted}"
            )

        index = {v: i for i, v in enumerate(vertices)}
        edge_pairs = set()
        prev_vertices = prev.vertices
        prev_edges = [(prev_vertices[iu], prev_vertices[iw]) for iu, iw in prev.edges()]
        for v in prev_vertices:
            for u, w in prev_edges:
                x = midpoint(v, u)
                y = midpoint(v, w)
                if x is y:
                    continue  # degenerate cone: both midpoints collapse
                i, j = index[x], index[y]
                edge_pairs.add((i, j) if i < j else (j, i))
        levels.append(_seal(n, n0, vertices, edge_pairs))
    return levels


def predict_vcount(n0: int, n: int) -> int:
    """Exact vertex count of level n from the closed two-term recursion."""
    return predict_vcounts(n0, n)[n]


def predict_vcounts(n0: int, n_max: int) -> list[int]:
    """Vertex counts for levels 0..n_max (arbitrary precision)."""
    counts = [0]
    if n_max >= 1:
        counts.append(n0)
    for _ in range(2, n_max + 1):
        a, b = counts[-1], counts[-2]
        counts.append((a + b) * (a - b + 1) // 2)
    return counts


def edge_upper_bounds(n0: int, n_max: int, exact: dict[int, int] | None = None) -> list[int]:
    """Upper bounds on edge counts via |E_n| <= |V_{n-1}|*|E_{n-1}|.

    ``exact`` may pin known edge counts (level -> count); the recursion then
    continues from the largest pinned level, keeping the bounds as tight as
    the available data allows.
    """
    vcounts = predict_vcounts(n0, n_max)
    bounds = [0]
    if n_max >= 1:
        bounds.append(n0 * (n0 - 1) // 2)
    for n in range(2, n_max + 1):
        if exact and n in exact:
            bounds.append(exact[n])
        else:
            bounds.append(vcounts[n - 1] * bounds[n - 1])
    return bounds


def check_growth(vcounts, ecounts=None, n0=None, epsilon: Fraction | None = None):
    """Tabulate the count inequalities the hierarchy is known to satisfy.

    Returns one row per level with booleans (None where a check does not
    apply at that level or lacks data):

      * ``ratio3_ok``      -- |V_{n-1}|^2 <= 3 |V_n|          (n >= 1, n0 >= 2)
      * ``square_ok``      -- |V_n| >= |V_{n-2}|^2            (n >= 6, n0 >= 2)
      * ``edge_step_ok``   -- |E_n| <= |V_{n-1}| |E_{n-1}|    (n >= 2)
      * ``edge_prod_ok``   -- |E_n| <= C prod_{i<n} |V_i|,  C = n0(n0-1)/2
      * ``density``        -- |E_n| / |V_n|^(1+eps) as a float, if eps given
    """
    if n0 is None:
        n0 = vcounts[1] if len(vcounts) > 1 else 0
    rows = []
    prod = 1  # running product of |V_1| .. |V_{n-1}|
    c = n0 * (n0 - 1) // 2
    for n, vc in enumerate(vcounts):
        row = {
            "n": n,
            "vcount": vc,
            "ecount": ecounts[n] if ecounts is not None and n < len(ecounts) else None,
            "ratio3_ok": None,
            "square_ok": None,
            "edge_step_ok": None,
            "edge_prod_ok": None,
            "density": None,
        }
        if n >= 1 and n0 >= 2:
            row["ratio3_ok"] = vcounts[n - 1] ** 2 <= 3 * vc
        if n >= 6 and n0 >= 2:
            row["square_ok"] = vc >= vcounts[n - 2] ** 2
        if row["ecount"] is not None:
            ec = row["ecount"]
            if n >= 2 and ecounts[n - 1] is not None:
                row["edge_step_ok"] = ec <= vcounts[n - 1] * ecounts[n - 1]
            if n >= 1:
                row["edge_prod_ok"] = ec <= c * prod
            if epsilon is not None and vc > 0:
                p, q = epsilon.numerator, epsilon.denominator
                row["density"] = ec / (vc * float(vc) ** (p / q))
        if n >= 1:
            prod *= vc
        rows.append(row)
    return rows
