"""Dyadic geodesics induced by the midpoint map, their verification, and
iterated midpoint hulls.

The geodesic between x and y is defined on dyadic times by repeated
bisection: the value at the midpoint of two adjacent grid times is the
midpoint of the values there.  All checks on limiting distances go through
rigorous intervals; exact assertions are only ever made on integer hop
distances, where they are theorems of the construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded
from .metrics import all_pairs, rho_interval
from .vertex import Vertex, midpoint

__all__ = [
    "DyadicTime",
    "GeodesicSample",
    "geodesic_point",
    "geodesic_grid",
    "verify_geodesic",
    "verify_conical",
    "hull_iterate",
    "probe_consistency",
]


@dataclass(frozen=True)
class DyadicTime:
    """A time p/2^q in [0, 1], stored reduced (p odd, or p = 0 with q = 0)."""

    p: int
    q: int

    @staticmethod
    def of(p: int, q: int) -> "DyadicTime":
        if q < 0 or p < 0 or p > 2**q:
            raise ValueError(f"{p}/2^{q} is not a dyadic time in [0, 1]")
        while p % 2 == 0 and q > 0:
            p //= 2
            q -= 1
        return DyadicTime(p, q)

    @staticmethod
    def from_fraction(f) -> "DyadicTime":
        f = Fraction(f)
        den = f.denominator
        q = den.bit_length() - 1
        if den != 2**q:
            raise ValueError(f"{f} is not dyadic")
        return DyadicTime.of(f.numerator, q)

    @staticmethod
    def grid(q: int) -> list["DyadicTime"]:
        """All times of the 2^-q grid, in increasing order."""
        return [DyadicTime.of(p, q) for p in range(2**q + 1)]

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, 2**self.q)

    def in_grid(self, q: int) -> bool:
        return self.q <= q

    def complement(self) -> "DyadicTime":
        return DyadicTime.of(2**self.q - self.p, self.q)

    def times(self, other: "DyadicTime") -> "DyadicTime":
        return DyadicTime.of(self.p * other.p, self.q + other.q)

    def neighbors(self) -> tuple["DyadicTime", "DyadicTime"]:
        """The two adjacent coarser-grid times this one bisects."""
        if self.q == 0:
            raise ValueError("0 and 1 have no bisection parents")
        return DyadicTime.of(self.p - 1, self.q), DyadicTime.of(self.p + 1, self.q)

    def __str__(self):
        return f"{self.p}/{2**self.q}"


@dataclass(frozen=True)
class GeodesicSample:
    x: Vertex
    y: Vertex
    t: DyadicTime
    point: Vertex
    depth: int  # grid exponent consumed; point level <= max(level x, y) + depth


def geodesic_point(x: Vertex, y: Vertex, t: DyadicTime) -> GeodesicSample:
    """Evaluate the induced geodesic from x to y at a dyadic time."""
    memo: dict[tuple[int, int], Vertex] = {(0, 0): x, (1, 0): y}

    def ev(tt: DyadicTime) -> Vertex:
        got = memo.get((tt.p, tt.q))
        if got is None:
            r, s = tt.neighbors()
            got = midpoint(ev(r), ev(s))
            memo[(tt.p, tt.q)] = got
        return got

    return GeodesicSample(x, y, t, ev(t), t.q)


def geodesic_grid(x: Vertex, y: Vertex, q: int) -> list[GeodesicSample]:
    """Samples at every time of the 2^-q grid, computed by repeated bisection."""
    points = [x, y]
    for _ in range(q):
        refined = [points[0]]
        for a, b in zip(points, points[1:]):
            refined.append(midpoint(a, b))
            refined.append(b)
        points = refined
    ts = DyadicTime.grid(q)
    return [GeodesicSample(x, y, t, p, q) for t, p in zip(ts, points)]


@dataclass
class CheckReport:
    """Uniform shape for verification passes (serializes to the report JSON)."""

    check: str
    level: int
    mode: str
    instances: int
    violations: int
    max_slack: int | str
    witnesses: list

    @property
    def ok(self) -> bool:
        return self.violations == 0


def verify_geodesic(x: Vertex, y: Vertex, q: int, N: int, levels) -> CheckReport:
    """Interval-consistency of geodesic speed on the 2^-q grid.

    For grid times s, t the limiting distance between the samples must be
    |s - t| times the endpoint distance; with only intervals available we
    assert the necessary inclusions in both directions.
    """
    samples = geodesic_grid(x, y, q)
    over = [s for s in samples if s.point.level > N]
    if over:
        raise ValueError(
            f"sample at t={over[0].t} has level {over[0].point.level} > witness level {N}"
        )
    endpoint = rho_interval(x, y, N, levels)
    violations = 0
    witnesses = []
    instances = 0
    worst = Fraction(0)
    for i, si in enumerate(samples):
        for sj in samples[i + 1 :]:
            gap = abs(si.t.value - sj.t.value)
            iv = rho_interval(si.point, sj.point, N, levels)
            instances += 1
            lo_ok = iv.lower <= gap * endpoint.upper
            hi_ok = iv.upper >= gap * endpoint.lower
            if not (lo_ok and hi_ok):
                violations += 1
                if len(witnesses) < 8:
                    witnesses.append((str(si.t), str(sj.t), str(iv.lower), str(iv.upper)))
            worst = max(worst, iv.width)
    return CheckReport(
        "geodesic-interval", N, f"grid-q{q}", instances, violations, str(worst), witnesses
    )


def verify_conical(
    n: int, levels, mode: str = "exhaustive", samples: int = 100_000, seed: int = 0
) -> tuple[CheckReport, CheckReport]:
    """The two discrete comparison inequalities between levels n-1 and n.

    Four-point: d_n(m(x1,x2), m(y1,y2)) <= d_{n-1}(x1,y1) + d_{n-1}(x2,y2)
    over quadruples one level down.  Three-point (the scaled half-distance
    form, equivalent to an integer comparison): d_n(m(x,y), m(x,z)) <=
    d_{n-1}(y,z) over triples.  Exhaustive or seeded-sample instance sets.
    """
    import numpy as np

    prev, cur = levels[n - 1], levels[n]
    dp = all_pairs(prev).dist.astype(np.int64)
    dc = all_pairs(cur).dist.astype(np.int64)
    nv = prev.vcount
    mid = np.empty((nv, nv), dtype=np.int64)
    for i, u in enumerate(prev.vertices):
        for j, w in enumerate(prev.vertices):
            mid[i, j] = cur.index[midpoint(u, w)]

    if mode == "exhaustive":
        idx = np.indices((nv, nv, nv, nv)).reshape(4, -1)
        x1, x2, y1, y2 = idx
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        x1, x2, y1, y2 = rng.integers(0, nv, size=(4, samples))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    lhs = dc[mid[x1, x2], mid[y1, y2]]
    rhs = dp[x1, y1] + dp[x2, y2]
    bad = lhs > rhs
    four = CheckReport(
        "conical-four-point", n, mode, int(lhs.size), int(bad.sum()),
        int((rhs - lhs).max()) if lhs.size else 0,
        _witnesses(prev, bad, (x1, x2, y1, y2)),
    )

    if mode == "exhaustive":
        idx3 = np.indices((nv, nv, nv)).reshape(3, -1)
        x, y, z = idx3
    else:
        rng = np.random.default_rng(seed + 1)
        x, y, z = rng.integers(0, nv, size=(3, samples))
    lhs3 = dc[mid[x, y], mid[x, z]]
    rhs3 = dp[y, z]
    bad3 = lhs3 > rhs3
    three = CheckReport(
        "conical-three-point-scaled", n, mode, int(lhs3.size), int(bad3.sum()),
        int((rhs3 - lhs3).max()) if lhs3.size else 0,
        _witnesses(prev, bad3, (x, y, z)),
    )
    return four, three


def _witnesses(level, bad, index_arrays, limit=8):
    import numpy as np

    out = []
    for flat in np.nonzero(bad)[0][:limit]:
        out.append(tuple(str(level.vertices[arr[flat]]) for arr in index_arrays))
    return out


def hull_iterate(a, steps: int, max_size: int | None = 1_000_000) -> list[set[Vertex]]:
    """Iterated midpoint hulls M_1(A), ..., M_steps(A).

    Each stage is all midpoints of pairs from the previous one, so A is
    contained in every stage.  Raises :class:`BudgetExceeded` when a stage
    would outgrow ``max_size``.
    """
    current = set(a)
    if not current:
        raise ValueError("hull iteration needs a nonempty start set")
    out = []
    for step in range(steps):
        size = len(current)
        predicted = size * (size + 1) // 2
        if max_size is not None and predicted > max_size:
            raise BudgetExceeded(
                f"hull stage {step + 1} may reach {predicted} vertices, cap {max_size}",
                predicted=predicted,
                cap=max_size,
            )
        nxt = set(current)
        items = list(current)
        for i, p in enumerate(items):
            for q in items[i + 1 :]:
                nxt.add(midpoint(p, q))
        current = nxt
        out.append(current)
    return out


@dataclass
class ConsistencyProbe:
    x: Vertex
    y: Vertex
    s: DyadicTime
    t: DyadicTime
    direct: Vertex       # geodesic of (x, y) at s*t
    nested: Vertex       # geodesic of (x, sigma_xy(t)) at s
    interval: object     # rho interval between the two
    counterexample: bool # interval excludes zero


def probe_consistency(x: Vertex, y: Vertex, s: DyadicTime, t: DyadicTime, N: int, levels) -> ConsistencyProbe:
    """Compare sigma_xy(s*t) with sigma_{x, sigma_xy(t)}(s) through intervals.

    A strictly positive interval lower bound would witness a failure of
    consistency for this induced geodesic family; the probe only gathers
    evidence and never asserts the negative.
    """
    st = s.times(t)
    direct = geodesic_point(x, y, st).point
    inner = geodesic_point(x, y, t).point
    nested = geodesic_point(x, inner, s).point
    iv = rho_interval(direct, nested, N, levels)
    return ConsistencyProbe(x, y, s, t, direct, nested, iv, iv.lower > 0)
