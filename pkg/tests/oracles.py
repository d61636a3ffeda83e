"""Independent brute-force reference implementations used by the tests.

Deliberately naive and structurally unrelated to the package: vertices are
nested frozensets, BFS is a dict-and-deque walk, power counts come from
boolean matrix powers, and the clique oracle enumerates subsets.  Whenever a
test compares the package against these, the two routes share no code.
"""

from collections import deque
from fractions import Fraction
from itertools import combinations

import numpy as np


def om(a, b):
    return a if a == b else frozenset((a, b))


def obuild(n0, nmax):
    """Levels as (vertex_set, edge_set_of_frozensets) pairs for n = 0..nmax."""
    levels = [(set(), set())]
    if nmax == 0:
        return levels
    v1 = set(range(n0))
    e1 = {frozenset((a, b)) for a, b in combinations(v1, 2)}
    levels.append((v1, e1))
    for _ in range(2, nmax + 1):
        vp, ep = levels[-1]
        vn = set(vp)
        for a, b in combinations(vp, 2):
            vn.add(om(a, b))
        en = set()
        for v in vp:
            for e in ep:
                u, w = tuple(e)
                x, y = om(v, u), om(v, w)
                if x != y:
                    en.add(frozenset((x, y)))
        levels.append((vn, en))
    return levels


def oadj(v, e):
    adj = {x: set() for x in v}
    for ed in e:
        a, b = tuple(ed)
        adj[a].add(b)
        adj[b].add(a)
    return adj


def obfs(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def oall_pairs(v, e):
    adj = oadj(v, e)
    return {x: obfs(adj, x) for x in v}


def convert(vertex):
    """Package vertex -> oracle frozenset term."""
    if vertex.is_leaf:
        return vertex.label
    return om(convert(vertex.lo), convert(vertex.hi))


def power_count_matrix(level, m):
    """|E(G^m)| via boolean matrix powers of the adjacency (plus identity)."""
    n = level.vcount
    if n == 0 or m == 0:
        return 0
    a = np.zeros((n, n), dtype=bool)
    for i, j in level.edges():
        a[i, j] = a[j, i] = True
    reach = np.eye(n, dtype=bool)
    step = np.eye(n, dtype=bool)
    for _ in range(m):
        step = step @ a
        reach |= step
    np.fill_diagonal(reach, False)
    return int(reach.sum()) // 2


def max_clique_bruteforce(nv, adjacent):
    """Exact maximum clique by branch and bound over index sets."""
    best = []

    def extend(clique, cands):
        nonlocal best
        if len(clique) + len(cands) <= len(best):
            return
        if not cands:
            if len(clique) > len(best):
                best = list(clique)
            return
        v = cands[0]
        extend(clique + [v], [u for u in cands[1:] if adjacent(u, v)])
        extend(clique, cands[1:])

    extend([], list(range(nv)))
    return best


def turan_bound(vcount, r):
    return (1 - Fraction(1, r)) * Fraction(vcount**2, 2)
