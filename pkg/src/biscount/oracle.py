"""Exponential-time reference counters.

Every function here enumerates candidate objects directly and shares no code
with the fast counters; they are the ground truth for the test-suite.
"""
from __future__ import annotations

import itertools
import math
import os
from itertools import combinations

from .errors import GuardExceeded
from .graphs import BipartiteGraph, ColouredGraph

DEFAULT_GUARD = 24
DEFAULT_PATTERN_GUARD = 8


def vertex_guard() -> int:
    """Largest vertex count a brute-force oracle will enumerate (``BISCOUNT_GUARD`` overrides)."""
    value = os.environ.get("BISCOUNT_GUARD")
    return int(value) if value else DEFAULT_GUARD


def _check(size, guard, what="graph"):
    limit = vertex_guard() if guard is None else guard
    if size > limit:
        raise GuardExceeded(f"{what} has {size} vertices, brute-force guard is {limit}")


def _masks(g: BipartiteGraph):
    """Adjacency bitmasks over the joint vertex index (U first, then V)."""
    nu = g.n_left
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << (nu + v)
        adj[nu + v] |= 1 << u
    return adj


def _is_independent(adj, vertices) -> bool:
    chosen = 0
    for x in vertices:
        chosen |= 1 << x
    return all(not adj[x] & chosen for x in vertices)


def brute_is(g: BipartiteGraph, guard: int | None = None) -> int:
    """IS(G): number of independent sets, by include/exclude search over all vertices."""
    _check(g.n, guard)
    adj = _masks(g)
    n = g.n

    def rec(i, chosen):
        if i == n:
            return 1
        total = rec(i + 1, chosen)
        if not adj[i] & chosen:
            total += rec(i + 1, chosen | (1 << i))
        return total

    return rec(0, 0)


def brute_is_k(g: BipartiteGraph, k: int, guard: int | None = None) -> int:
    _check(g.n, guard)
    if k < 0 or k > g.n:
        return 0
    adj = _masks(g)
    return sum(1 for s in combinations(range(g.n), k) if _is_independent(adj, s))


def _left_independent_sets(g: BipartiteGraph, l: int):
    """Yield every independent set S with |S & U| = l as a tuple of joint indices."""
    adj = _masks(g)
    right = range(g.n_left, g.n)
    for xs in combinations(range(g.n_left), l):
        for size in range(g.n_right + 1):
            for ys in combinations(right, size):
                s = xs + ys
                if _is_independent(adj, s):
                    yield s


def brute_lis(g: BipartiteGraph, l: int, guard: int | None = None) -> int:
    """LIS_l(G) by enumerating every pair (X subset of U, Y subset of V)."""
    _check(g.n, guard)
    if l < 0 or l > g.n_left:
        return 0
    return sum(1 for _ in _left_independent_sets(g, l))


def brute_maxlis(g: BipartiteGraph, l: int, guard: int | None = None) -> tuple[int, int]:
    """(mu_l(G), MAXLIS_l(G)) by enumerating every l-left independent set."""
    _check(g.n, guard)
    if l < 0 or l > g.n_left:
        raise ValueError(f"no {l}-left independent set: |U| = {g.n_left}")
    best, count = -1, 0
    for s in _left_independent_sets(g, l):
        if len(s) > best:
            best, count = len(s), 1
        elif len(s) == best:
            count += 1
    return best, count


# Left-side enumerations.  These only enumerate subsets X of U and use the fact
# that the l-left independent sets extending X are exactly X plus any subset of
# V minus Gamma(X).  They handle the large right sides built by the reductions.
# Their cost is C(|U|, l) subsets, so the guard bounds that number by 2^guard.

def _check_left(g: BipartiteGraph, l: int, guard):
    limit = vertex_guard() if guard is None else guard
    if 0 <= l <= g.n_left and math.comb(g.n_left, l) > 2 ** limit:
        raise GuardExceeded(f"C({g.n_left}, {l}) left subsets exceed 2^{limit}")


def _neighbourhood_sizes(g: BipartiteGraph, l: int):
    for xs in combinations(range(g.n_left), l):
        seen = set()
        for u in xs:
            seen.update(g.left_adj[u])
        yield len(seen)


def brute_lis_left(g: BipartiteGraph, l: int, guard: int | None = None) -> int:
    _check_left(g, l, guard)
    if l < 0 or l > g.n_left:
        return 0
    return sum(1 << (g.n_right - r) for r in _neighbourhood_sizes(g, l))


def brute_maxlis_left(g: BipartiteGraph, l: int, guard: int | None = None) -> tuple[int, int]:
    _check_left(g, l, guard)
    if l < 0 or l > g.n_left:
        raise ValueError(f"no {l}-left independent set: |U| = {g.n_left}")
    best, count = None, 0
    for r in _neighbourhood_sizes(g, l):
        if best is None or r < best:
            best, count = r, 1
        elif r == best:
            count += 1
    return l + g.n_right - best, count


def brute_n_lr(g: BipartiteGraph, l: int, r: int, guard: int | None = None) -> int:
    """N_{l,r}(G): size-l subsets of U with exactly r neighbours in V."""
    _check_left(g, l, guard)
    if l < 0 or l > g.n_left:
        return 0
    return sum(1 for size in _neighbourhood_sizes(g, l) if size == r)


def brute_maxis(g: BipartiteGraph, guard: int | None = None) -> tuple[int, int]:
    """(mu(G), MAXIS(G)) over all independent sets."""
    _check(g.n, guard)
    adj = _masks(g)
    size = g.n
    while True:  # terminates: the empty set is independent
        c = sum(1 for s in combinations(range(g.n), size) if _is_independent(adj, s))
        if c:
            return size, c
        size -= 1


# ---------------------------------------------------------------- coloured graphs

def _colour_candidates(h: ColouredGraph, g: ColouredGraph):
    by_colour: dict[int, list[int]] = {}
    for v, c in enumerate(g.colours):
        by_colour.setdefault(c, []).append(v)
    return [by_colour.get(c, []) for c in h.colours]


def _is_hom(h: ColouredGraph, g: ColouredGraph, phi) -> bool:
    return all(phi[b] in g.adj[phi[a]] for a, b in h.edges)


def brute_hom(h: ColouredGraph, g: ColouredGraph, guard: int = DEFAULT_PATTERN_GUARD) -> int:
    """Hom(H, G) over every colour-preserving map V(H) -> V(G)."""
    _check(h.n, guard, "pattern")
    return sum(1 for phi in itertools.product(*_colour_candidates(h, g)) if _is_hom(h, g, phi))


def brute_shom(k: ColouredGraph, k2: ColouredGraph, guard: int = DEFAULT_PATTERN_GUARD) -> int:
    """Number of homomorphisms K -> K2 whose image covers every vertex of K2."""
    _check(k.n, guard, "pattern")
    _check(k2.n, guard, "pattern")
    if k2.n > k.n:
        return 0
    return sum(1 for phi in itertools.product(*_colour_candidates(k, k2))
               if len(set(phi)) == k2.n and _is_hom(k, k2, phi))


def is_isomorphic(a: ColouredGraph, b: ColouredGraph) -> bool:
    """Colour-preserving isomorphism test by permutation search."""
    if a.n != b.n or len(a.edges) != len(b.edges) or sorted(a.colours) != sorted(b.colours):
        return False
    cands = _colour_candidates(a, b)
    for phi in itertools.product(*cands):
        if len(set(phi)) == a.n and _is_hom(a, b, phi):
            return True
    return False


def brute_ind(h: ColouredGraph, g: ColouredGraph, guard: int | None = None) -> int:
    """Ind(H, G): vertex subsets X of G with G[X] isomorphic to H."""
    _check(g.n, guard)
    _check(h.n, DEFAULT_PATTERN_GUARD, "pattern")
    total = 0
    for xs in combinations(range(g.n), h.n):
        index = {x: i for i, x in enumerate(xs)}
        sub = ColouredGraph(
            tuple(g.colours[x] for x in xs),
            tuple((index[a], index[b]) for a, b in g.edges if a in index and b in index))
        if is_isomorphic(h, sub):
            total += 1
    return total


def brute_cliques(g: ColouredGraph, k: int, guard: int | None = None) -> int:
    _check(g.n, guard)
    if k < 0:
        return 0
    return sum(1 for s in combinations(range(g.n), k)
               if all(b in g.adj[a] for a, b in combinations(s, 2)))


def brute_dominating(g: ColouredGraph, k: int, guard: int | None = None) -> int:
    """Size-k sets D with every vertex in D or adjacent to D."""
    _check(g.n, guard)
    if k < 0:
        return 0
    total = 0
    everything = set(range(g.n))
    for s in combinations(range(g.n), k):
        covered = set(s)
        for x in s:
            covered |= g.adj[x]
        total += covered == everything
    return total


def brute_rainbow(t: int, g: ColouredGraph, h: ColouredGraph, guard: int | None = None) -> int:
    """Sub(G, H) for a balanced 2t-vertex biclique H using each colour of [2t] once."""
    _check(g.n, guard)
    if h.n != 2 * t or sorted(h.colours) != list(range(1, 2 * t + 1)):
        raise ValueError("H must have 2t vertices using each colour of [2t] exactly once")
    if len(h.edges) != t * t or any(len(a) != t for a in h.adj):
        raise ValueError("H must be a balanced biclique K_{t,t}")
    colour_edges = [(h.colours[a], h.colours[b]) for a, b in h.edges]
    total = 0
    for s in combinations(range(g.n), 2 * t):
        colours = [g.colours[x] for x in s]
        if sorted(colours) != list(range(1, 2 * t + 1)):
            continue
        at = {c: x for c, x in zip(colours, s)}
        # a subgraph copy of H on s exists iff every biclique edge is present; it is then unique
        total += all(at[cb] in g.adj[at[ca]] for ca, cb in colour_edges)
    return total
