from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from midpointlab.bicombing import (
    DyadicTime,
    geodesic_grid,
    geodesic_point,
    hull_iterate,
    probe_consistency,
    verify_conical,
    verify_geodesic,
)
from midpointlab.errors import BudgetExceeded
from midpointlab.metrics import all_pairs, distance
from midpointlab.vertex import leaf, midpoint

from test_vertex import vertices


def dyadic_times(max_q=6):
    return st.tuples(st.integers(0, 6), st.integers(0, 2**6)).map(
        lambda pq: DyadicTime.of(min(pq[1], 2 ** pq[0]), pq[0])
    ).filter(lambda t: t.q <= max_q)


class TestDyadicTime:
    def test_reduction(self):
        t = DyadicTime.of(4, 4)
        assert (t.p, t.q) == (1, 2)
        assert DyadicTime.of(0, 5) == DyadicTime.of(0, 0)
        assert DyadicTime.of(2**5, 5) == DyadicTime.of(1, 0)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            DyadicTime.of(9, 3)
        with pytest.raises(ValueError):
            DyadicTime.of(-1, 3)
        with pytest.raises(ValueError):
            DyadicTime.from_fraction(Fraction(1, 3))

    def test_neighbors(self):
        t = DyadicTime.from_fraction(Fraction(3, 8))
        r, s = t.neighbors()
        assert r.value == Fraction(1, 4) and s.value == Fraction(1, 2)

    def test_grid(self):
        g = DyadicTime.grid(2)
        assert [t.value for t in g] == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]

    @given(dyadic_times())
    def test_properties(self, t):
        assert 0 <= t.value <= 1
        assert t.p == 0 or t.p % 2 == 1 or t.q == 0
        assert t.in_grid(t.q) and t.in_grid(t.q + 3)
        assert t.complement().value == 1 - t.value


class TestGeodesicPoint:
    def test_half_is_midpoint(self):
        x, y = leaf(0), leaf(1)
        t = DyadicTime.from_fraction(Fraction(1, 2))
        assert geodesic_point(x, y, t).point is midpoint(x, y)

    def test_degenerate_endpoints(self):
        x = leaf(0)
        for f in (Fraction(0), Fraction(1, 4), Fraction(5, 8), Fraction(1)):
            assert geodesic_point(x, x, DyadicTime.from_fraction(f)).point is x

    def test_quarter_point(self):
        x, y = leaf(0), leaf(1)
        got = geodesic_point(x, y, DyadicTime.from_fraction(Fraction(1, 4))).point
        assert got is midpoint(x, midpoint(x, y))

    def test_endpoints(self):
        x, y = leaf(0), leaf(1)
        assert geodesic_point(x, y, DyadicTime.of(0, 0)).point is x
        assert geodesic_point(x, y, DyadicTime.of(1, 0)).point is y

    def test_grid_matches_pointwise(self):
        x = leaf(0)
        y = midpoint(leaf(0), leaf(1))
        samples = geodesic_grid(x, y, 3)
        assert len(samples) == 9
        for s in samples:
            assert geodesic_point(x, y, s.t).point is s.point

    def test_level_budget(self):
        x, y = leaf(0), leaf(1)
        for s in geodesic_grid(x, y, 4):
            assert s.point.level <= max(x.level, y.level) + 4

    @given(vertices(max_level=4), vertices(max_level=4), dyadic_times(max_q=4))
    def test_reversibility(self, x, y, t):
        assert (
            geodesic_point(x, y, t).point
            is geodesic_point(y, x, t.complement()).point
        )


class TestVerifyGeodesic:
    def test_leaf_pair_depths(self, levels2):
        for q in (1, 2, 3):
            rep = verify_geodesic(leaf(0), leaf(1), q, 6, levels2)
            assert rep.violations == 0
            assert rep.instances == (2**q + 1) * 2**q // 2

    def test_quarter_points_interval_contains_half(self, levels2):
        # the leaf pair sits at scaled distance exactly one, so the interval
        # between the quarter points must contain 1/2
        from midpointlab.metrics import rho_interval

        x, y = leaf(0), leaf(1)
        s14 = geodesic_point(x, y, DyadicTime.from_fraction(Fraction(1, 4))).point
        s34 = geodesic_point(x, y, DyadicTime.from_fraction(Fraction(3, 4))).point
        iv = rho_interval(s14, s34, 6, levels2)
        assert Fraction(1, 2) in iv
        assert iv.upper == Fraction(1, 2)  # measured: the quarter gap is exact here

    def test_midpointness_at_depth_one(self, levels2):
        # d(x, m(x,y)) = d(x,y)/2 up to the interval width
        from midpointlab.metrics import rho_interval

        x, y = leaf(0), leaf(1)
        mid = midpoint(x, y)
        iv = rho_interval(x, mid, 6, levels2)
        assert Fraction(1, 2) in iv
        assert iv.width <= Fraction(8, 2**6)

    def test_equal_endpoints(self, levels2):
        rep = verify_geodesic(leaf(0), leaf(0), 2, 6, levels2)
        assert rep.violations == 0

    def test_sample_level_guard(self, levels2):
        with pytest.raises(ValueError):
            verify_geodesic(leaf(0), leaf(1), 3, 2, levels2)

    def test_midlevel_pair(self, levels2):
        x = midpoint(leaf(0), leaf(1))
        y = midpoint(leaf(0), x)
        rep = verify_geodesic(x, y, 3, 6, levels2)
        assert rep.violations == 0


class TestVerifyConical:
    def test_exhaustive_level4(self, levels2):
        four, three = verify_conical(4, levels2, mode="exhaustive")
        assert four.instances == 5**4 and four.violations == 0
        assert three.instances == 5**3 and three.violations == 0

    def test_exhaustive_level5(self, levels2):
        four, three = verify_conical(5, levels2, mode="exhaustive")
        assert four.instances == 12**4 and four.violations == 0
        assert three.violations == 0

    def test_sampled_level6(self, levels2):
        four, three = verify_conical(6, levels2, mode="sampled", samples=100_000, seed=0)
        assert four.instances == 100_000 and four.violations == 0
        assert three.violations == 0

    def test_deterministic_sampling(self, levels2):
        a = verify_conical(5, levels2, mode="sampled", samples=500, seed=3)
        b = verify_conical(5, levels2, mode="sampled", samples=500, seed=3)
        assert a[0].max_slack == b[0].max_slack and a[1].max_slack == b[1].max_slack

    def test_same_midpoint_quadruple(self, levels2):
        # swapped leaf quadruple maps both midpoints to the same vertex
        l5 = levels2[5]
        p = midpoint(leaf(0), leaf(1))
        assert distance(l5, p, p) == 0

    def test_rescaled_four_point_inequality(self, levels2):
        # the integer inequality implies the half-plus-half scaled form
        import numpy as np

        prev, cur = levels2[4], levels2[5]
        dp = all_pairs(prev).dist
        dc = all_pairs(cur).dist
        rng = np.random.default_rng(5)
        idx = rng.integers(0, prev.vcount, size=(4, 2000))
        for x1, x2, y1, y2 in idx.T:
            p = midpoint(prev.vertices[x1], prev.vertices[x2])
            q = midpoint(prev.vertices[y1], prev.vertices[y2])
            lhs = Fraction(int(dc[cur.index[p], cur.index[q]]), 2**4)
            rhs = (
                Fraction(int(dp[x1, y1]), 2**3) + Fraction(int(dp[x2, y2]), 2**3)
            ) / 2
            assert lhs <= rhs


class TestHullIterate:
    def test_singleton(self):
        out = hull_iterate([leaf(0)], 4)
        assert all(h == {leaf(0)} for h in out)

    def test_leaf_set_reproduces_levels(self, levels2):
        out = hull_iterate(levels2[1].vertices, 4)
        for k, h in enumerate(out, start=1):
            assert h == set(levels2[k + 1].vertices)

    def test_contains_start(self):
        a = [leaf(0), leaf(1), leaf(2)]
        out = hull_iterate(a, 2)
        assert set(a) <= out[0] <= out[1]

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            hull_iterate([leaf(i) for i in range(3)], 6, max_size=100)

    def test_empty_start_rejected(self):
        with pytest.raises(ValueError):
            hull_iterate([], 2)


class TestConsistencyProbe:
    def test_probe_runs_and_reports(self, levels2):
        s = DyadicTime.from_fraction(Fraction(1, 2))
        t = DyadicTime.from_fraction(Fraction(1, 2))
        probe = probe_consistency(leaf(0), leaf(1), s, t, 6, levels2)
        # first bisections agree by construction
        assert probe.direct is probe.nested
        assert not probe.counterexample

    def test_probe_interval_form(self, levels2):
        s = DyadicTime.from_fraction(Fraction(1, 4))
        t = DyadicTime.from_fraction(Fraction(1, 2))
        probe = probe_consistency(leaf(0), leaf(1), s, t, 6, levels2)
        assert 0 <= probe.interval.lower <= probe.interval.upper
        assert probe.counterexample == (probe.interval.lower > 0)
