"""Exact counters for bounded-degree bipartite graphs.

IS_k goes through induced counting of an edgeless monochromatic pattern.
LIS_l and MAXLIS_l go through the neighbourhood profile N_{l,r}: the number of
l-subsets X of U with |Gamma(X)| = r.  Writing N'_{l,r} for the number of pairs
(X, Y) with Y a size-r subset of Gamma(X) such that every vertex of Y has a
neighbour in X, we have N'_{l,r} = sum_i C(i, r) N_{l,i}, and N'_{l,r} is a sum
of induced counts of bipartite patterns with no isolated right vertex.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .bipatterns import BipartitePattern, bipartite_basis
from .colsub import count_induced, solve_upper
from .errors import CapExceeded, DegreeBoundError
from .graphs import BipartiteGraph, ColouredGraph, max_degree, to_coloured
from .homcount import HostIndex, count_hom

DEFAULT_L_CAP = 5
DEFAULT_K_CAP = 5


@dataclass(frozen=True)
class NeighbourhoodProfile:
    l: int
    values: tuple[int, ...]  # values[r] = N_{l,r}(G) for r = 0..delta*l

    def __getitem__(self, r):
        return self.values[r] if 0 <= r < len(self.values) else 0


def _check_degree(g, delta):
    if max_degree(g) > delta:
        raise DegreeBoundError(f"graph degree {max_degree(g)} exceeds {delta}")


def count_is_k_bounded(g: BipartiteGraph, k: int, delta: int, cap: int = DEFAULT_K_CAP) -> int:
    _check_degree(g, delta)
    if k > cap:
        raise CapExceeded(f"k = {k} exceeds cap {cap}")
    if k < 0 or k > g.n:
        return 0
    if k == 0:
        return 1
    host = to_coloured(g)
    mono = ColouredGraph((1,) * host.n, host.edges)
    return count_induced(ColouredGraph((1,) * k, ()), mono, delta)


def _hom_with_memo(p: BipartitePattern, host: HostIndex, memo: dict) -> int:
    total = 1
    for comp in p.components():
        if comp not in memo:
            memo[comp] = count_hom(comp.to_coloured(), host, cap=comp.n)
        total *= memo[comp]
        if not total:
            return 0
    return total


def _induced_counts(g: BipartiteGraph, l: int, delta: int) -> dict[BipartitePattern, int]:
    """Ind(K, phi(G)) for every K with exactly l left vertices, degree <= delta and
    no isolated right vertex."""
    basis = bipartite_basis(l, delta)
    host_deg = max_degree(g)
    # patterns that cannot embed in G have Ind = 0 and may be dropped from the system
    keep = [i for i, p in enumerate(basis.patterns)
            if p.n_left <= g.n_left and p.n_right <= g.n_right and p.max_degree <= host_deg]
    kept = set(keep)
    rows = {}
    for i in keep:
        rows[i] = {j: v for j, v in basis.row(i).items() if j in kept}
    host = HostIndex(to_coloured(g))
    memo: dict = {}
    b = {i: _hom_with_memo(basis.patterns[i], host, memo) for i in keep}
    wanted = [i for i in keep if basis.patterns[i].n_left == l]
    x = solve_upper(rows, b, wanted)
    return {basis.patterns[i]: x[i] for i in wanted}


@lru_cache(maxsize=256)
def _profile(g: BipartiteGraph, l: int, delta: int) -> tuple[int, ...]:
    size = delta * l + 1
    if l == 0:
        return (1,) + (0,) * (size - 1)
    if l > g.n_left:
        return (0,) * size
    top = min(delta * l, g.n_right)
    primed = [0] * (top + 1)
    for p, count in _induced_counts(g, l, delta).items():
        primed[p.n_right] += count
    values = [0] * size
    for r in range(top, -1, -1):
        values[r] = primed[r] - sum(math.comb(i, r) * values[i] for i in range(r + 1, top + 1))
        if values[r] < 0:
            raise AssertionError(f"negative N_{{{l},{r}}}")
    if sum(values) != math.comb(g.n_left, l):
        raise AssertionError("profile does not sum to C(|U|, l)")
    return tuple(values)


def neighbourhood_profile(g: BipartiteGraph, l: int, delta: int,
                          cap: int = DEFAULT_L_CAP) -> NeighbourhoodProfile:
    _check_degree(g, delta)
    if l < 0:
        raise ValueError("l must be non-negative")
    if l > cap:
        raise CapExceeded(f"l = {l} exceeds cap {cap}")
    return NeighbourhoodProfile(l, _profile(g, l, delta))


def count_lis_bounded(g: BipartiteGraph, l: int, delta: int, cap: int = DEFAULT_L_CAP) -> int:
    prof = neighbourhood_profile(g, l, delta, cap)
    return sum(n << (g.n_right - r) for r, n in enumerate(prof.values) if r <= g.n_right)


def count_maxlis_bounded(g: BipartiteGraph, l: int, delta: int,
                         cap: int = DEFAULT_L_CAP) -> tuple[int, int]:
    """(mu_l(G), MAXLIS_l(G))."""
    if l < 0 or l > g.n_left:
        raise ValueError(f"no {l}-left independent set: |U| = {g.n_left}")
    prof = neighbourhood_profile(g, l, delta, cap)
    mu = min(r for r, n in enumerate(prof.values) if n)
    return l + g.n_right - mu, prof.values[mu]
