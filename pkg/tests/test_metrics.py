import random
from fractions import Fraction

import numpy as np
import pytest

from midpointlab.errors import ConicalAxiomError, DisconnectedGraphError
from midpointlab.graphs import GraphLevel
from midpointlab.metrics import (
    EuclideanTarget,
    SupNormTarget,
    additive_error_check,
    all_pairs,
    bfs_distance,
    delta_coordinates,
    diameter_check,
    distance,
    push_forward,
    rho_interval,
    scaled_rho_n,
    shortest_path_between,
)
from midpointlab.vertex import leaf, midpoint

from oracles import convert, oall_pairs, obuild


def test_bfs_against_pure_python_oracle(levels2):
    oracle_levels = obuild(2, 4)
    for n in range(1, 5):
        lvl = levels2[n]
        table = all_pairs(lvl)
        od = oall_pairs(*oracle_levels[n])
        for i, u in enumerate(lvl.vertices):
            for j, w in enumerate(lvl.vertices):
                assert int(table.dist[i, j]) == od[convert(u)][convert(w)]


def test_bfs_selected_sources(levels2):
    lvl = levels2[5]
    table = bfs_distance(lvl, [leaf(0), leaf(1)])
    assert table.dist.shape == (2, 68)
    assert int(table.dist[0, lvl.index[leaf(1)]]) == 16
    full = all_pairs(lvl)
    assert (table.dist[0] == full.dist[lvl.index[leaf(0)]]).all()


def test_bfs_threads_deterministic(levels2):
    lvl = levels2[5]
    a = bfs_distance(lvl, list(range(68)), threads=1)
    b = bfs_distance(lvl, list(range(68)), threads=4)
    assert (a.dist == b.dist).all()


def test_disconnected_reported():
    lvl = GraphLevel(
        n=1, n0=4,
        vertices=[leaf(i) for i in range(4)],
        index={leaf(i): i for i in range(4)},
        adjacency=[[1], [0], [3], [2]],
        vcount=4, ecount=2,
    )
    with pytest.raises(DisconnectedGraphError) as exc:
        bfs_distance(lvl)
    assert len(exc.value.component) == 2


def test_distance_basics(levels2):
    assert distance(levels2[2], leaf(0), leaf(1)) == 2
    assert distance(levels2[2], leaf(0), leaf(0)) == 0


def test_diameters(levels2, levels3):
    for n in range(1, 7):
        rep = diameter_check(levels2[n])
        assert rep.ok and rep.diameter == 2 ** (n - 1) and rep.mode == "full"
    for n in range(1, 5):
        rep = diameter_check(levels3[n])
        assert rep.ok and rep.diameter == 2 ** (n - 1)


def test_diameter_leaf_only_mode(levels2):
    rep = diameter_check(levels2[6], cap=100)
    assert rep.mode == "leaf-only" and rep.ok and rep.diameter is None


def test_scaled_rho(levels2, example_pair):
    x, xp = example_pair
    for n in range(1, 7):
        assert scaled_rho_n(levels2[n], leaf(0), leaf(1)) == 1
    assert scaled_rho_n(levels2[4], x, x) == 0
    assert scaled_rho_n(levels2[4], x, xp) == Fraction(1, 4)


def test_rho_interval_leaf_pair(levels2):
    for n in range(2, 7):
        iv = rho_interval(leaf(0), leaf(1), n, levels2)
        assert iv.upper == 1
        assert iv.lower == max(Fraction(0), 1 - Fraction(8, 2**n))
        assert iv.width <= Fraction(8, 2**n)


def test_rho_interval_trivial_and_example(levels2, example_pair):
    x, xp = example_pair
    iv = rho_interval(x, x, 4, levels2)
    assert iv.lower == iv.upper == 0
    iv = rho_interval(x, xp, 5, levels2)
    assert iv.lower == 0 and iv.upper == Fraction(1, 8)


def test_rho_interval_level_validation(levels2, example_pair):
    x, xp = example_pair
    with pytest.raises(ValueError):
        rho_interval(x, xp, 3, levels2)  # vertices live at level 4


def test_rho_interval_nesting(levels2):
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(2, 6)
        pool = levels2[n].vertices
        x, y = rng.choice(pool), rng.choice(pool)
        a = rho_interval(x, y, n, levels2)
        b = rho_interval(x, y, n + 1, levels2)
        assert b.upper <= a.upper
        assert b.lower >= a.lower
        # certified positivity at hop distance >= 5
        if distance(levels2[n], x, y) >= 5:
            assert a.lower > 0


def test_additive_error_small_levels(levels2):
    for n in range(2, 6):
        rep = additive_error_check(n, levels2)
        assert rep.doubling_violations == 0
        assert rep.halving_violations == 0
        assert rep.cone_violations == 0
        assert rep.mode == "exhaustive"


def test_additive_error_level5_gap_attained(levels2):
    rep = additive_error_check(5, levels2)
    assert rep.max_gap == 2  # the known doubled-midpoint pair attains error 2


def test_additive_error_level6_findings(levels2):
    # the inequalities hold with the additive constant exactly attained, and
    # the two-pairing distance formula genuinely breaks for the first time
    rep = additive_error_check(6, levels2)
    assert rep.doubling_violations == 0
    assert rep.halving_violations == 0
    assert rep.max_gap == 4
    assert rep.cone_violations == 1692
    assert rep.cone_quadruples == 33856


def test_exact_conical_counterexample_level6(levels2):
    # frozen witness for the level-6 two-pairing failure, verified both ways
    from midpointlab.vertex import decode

    x = decode("{0,1}")
    xp = decode("{0,{1,{1,{0,1}}}}")
    y = decode("{{0,1},{0,{0,1}}}")
    yp = decode("{{0,1},{0,{0,{0,1}}}}")
    l5, l6 = levels2[5], levels2[6]
    assert l5.index[xp] in l5.adjacency[l5.index[x]]
    assert l5.index[yp] in l5.adjacency[l5.index[y]]
    p, q = midpoint(x, xp), midpoint(y, yp)
    best_pairing = min(
        distance(l5, x, y) + distance(l5, xp, yp),
        distance(l5, x, yp) + distance(l5, xp, y),
    )
    assert distance(l6, p, q) == 4
    assert best_pairing == 6


def test_delta_leaves_and_first_pair(levels2):
    coords = delta_coordinates(levels2, 4)
    assert coords[leaf(0)] == (1, 0)
    assert coords[leaf(1)] == (0, 1)
    assert coords[midpoint(leaf(0), leaf(1))] == (Fraction(1, 2), Fraction(1, 2))


def test_delta_simplex_invariants(levels2, levels3):
    for lvls, top in ((levels2, 6), (levels3, 4)):
        coords = delta_coordinates(lvls, top)
        for v in lvls[top].vertices:
            cs = coords[v]
            assert sum(cs) == 1
            for c in cs:
                assert 0 <= c <= 1
                assert c.denominator & (c.denominator - 1) == 0  # power of two
                assert c.denominator <= 2 ** (v.level - 1)


def test_delta_edge_property(levels2, levels3):
    for lvls, top in ((levels2, 6), (levels3, 4)):
        coords = delta_coordinates(lvls, top)
        for n in range(1, top + 1):
            lvl = lvls[n]
            want = Fraction(1, 2 ** (n - 1))
            for i, j in lvl.edges():
                u, w = lvl.vertices[i], lvl.vertices[j]
                assert max(abs(a - b) for a, b in zip(coords[u], coords[w])) == want


def test_delta_example_pair_collides(levels2, example_pair):
    x, xp = example_pair
    coords = delta_coordinates(levels2, 5)
    assert coords[x] == coords[xp] == (Fraction(3, 8), Fraction(5, 8))


def test_delta_matches_push_forward_route(levels2):
    # independent route: affine midpoints of basis vectors in the sup-norm space
    coords = delta_coordinates(levels2, 5)
    pf = push_forward(levels2, SupNormTarget(2), [(1, 0), (0, 1)], n=5)
    for v, img in pf.images.items():
        assert img == coords[v]


def test_push_forward_euclidean_lipschitz(levels2):
    pf = push_forward(levels2, EuclideanTarget(2), [(1, 0), (0, 1)], n=5)
    assert pf.ok
    assert pf.lipschitz_bound == pytest.approx(2**0.5)
    assert pf.lipschitz_empirical <= pf.lipschitz_bound + 1e-12


def test_push_forward_constant_images(levels2):
    pf = push_forward(levels2, EuclideanTarget(1), [(0,), (0,)], n=4)
    assert pf.ok and pf.lipschitz_empirical == 0
    assert all(img == (0,) for img in pf.images.values())


def test_push_forward_line_matches_second_coordinate(levels2):
    pf = push_forward(levels2, EuclideanTarget(1), [(0,), (1,)], n=4)
    coords = delta_coordinates(levels2, 4)
    lvl = levels2[4]
    for v in lvl.vertices:
        assert pf.images[v] == (coords[v][1],)
    # every edge image has length exactly 2^-(n-1)
    for i, j in lvl.edges():
        a = pf.images[lvl.vertices[i]][0]
        b = pf.images[lvl.vertices[j]][0]
        assert abs(a - b) == Fraction(1, 8)
    assert pf.ok and pf.lipschitz_empirical == pytest.approx(1.0)


def test_push_forward_rejects_asymmetric_midpoint(levels2):
    class Skewed(EuclideanTarget):
        def midpoint(self, p, q):
            return tuple((3 * a + b) / 4 for a, b in zip(p, q))

    with pytest.raises(ConicalAxiomError):
        push_forward(levels2, Skewed(2), [(1, 0), (0, 1)], n=4, conical_samples=512)


def test_push_forward_rejects_expansive_midpoint(levels2):
    # componentwise max is symmetric and idempotent but only 1-Lipschitz in
    # each argument, so it breaks the half-distance requirement
    class MaxMap(SupNormTarget):
        def midpoint(self, p, q):
            return tuple(max(a, b) for a, b in zip(p, q))

    with pytest.raises(ConicalAxiomError):
        push_forward(levels2, MaxMap(1), [(0,), (1,)], n=4, conical_samples=512)


def test_push_forward_wrong_leaf_count(levels2):
    with pytest.raises(ValueError):
        push_forward(levels2, EuclideanTarget(2), [(1, 0)], n=3)


def test_triangle_inequality_sampled(levels2):
    gen = np.random.default_rng(0)
    for n in (4, 5, 6):
        d = all_pairs(levels2[n]).dist.astype(np.int64)
        nv = levels2[n].vcount
        i, j, k = gen.integers(0, nv, size=(3, 10_000))
        assert (d[i, k] <= d[i, j] + d[j, k]).all()
        assert (d == d.T).all()
        assert int(d.max()) <= 2 ** (n - 1)


def test_shortest_path_is_shortest(levels2):
    lvl = levels2[5]
    rng = random.Random(3)
    for _ in range(50):
        x, y = rng.choice(lvl.vertices), rng.choice(lvl.vertices)
        path = shortest_path_between(lvl, x, y, seed=11)
        assert path[0] is x and path[-1] is y
        assert len(path) - 1 == distance(lvl, x, y)
        for a, b in zip(path, path[1:]):
            assert lvl.index[b] in lvl.adjacency[lvl.index[a]]
