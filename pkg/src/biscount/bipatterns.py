"""Two-coloured bipartite patterns with no isolated right vertex.

Such a pattern on left vertices [l] is determined by the multiset of right-vertex
neighbourhoods, each a nonempty bitmask over [l].  Canonical form: the
lexicographically least sorted mask tuple over the l! relabelings of the left
side.  This replaces adjacency-matrix canonisation, whose cost is (l + r)! for
r up to delta * l right vertices.

Vertex-surjective homomorphism counts between such patterns are computed by
inclusion-exclusion over the right side, grouped by neighbourhood type:

    SHom(K, K') = sum over surjections f: [l] -> [l'] of
                  sum_{j <= c} prod_t (-1)^(c_t - j_t) C(c_t, j_t)
                  * prod_y (sum_{t contains f(N(y))} j_t)

where c_t is the number of right vertices of K' with neighbourhood t.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .graphs import ColouredGraph


def _permute_mask(mask, perm):
    out = 0
    for i, p in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << p
    return out


def canonical_masks(n_left: int, masks) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(n_left)):
        cand = tuple(sorted(_permute_mask(m, perm) for m in masks))
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


@dataclass(frozen=True, order=True)
class BipartitePattern:
    n_left: int
    masks: tuple[int, ...]

    @classmethod
    def canonical(cls, n_left, masks) -> "BipartitePattern":
        return cls(n_left, canonical_masks(n_left, masks))

    @property
    def n_right(self) -> int:
        return len(self.masks)

    @property
    def n(self) -> int:
        return self.n_left + len(self.masks)

    @cached_property
    def n_edges(self) -> int:
        return sum(bin(m).count("1") for m in self.masks)

    @cached_property
    def max_degree(self) -> int:
        left = [sum(m >> i & 1 for m in self.masks) for i in range(self.n_left)]
        right = [bin(m).count("1") for m in self.masks]
        return max(left + right, default=0)

    @property
    def sort_key(self):
        return (-self.n, self.n_edges, self.n_left, self.masks)

    def to_coloured(self) -> ColouredGraph:
        """Left vertices 0..l-1 get colour 1, right vertices l.. get colour 2."""
        edges = [(i, self.n_left + y) for y, m in enumerate(self.masks)
                 for i in range(self.n_left) if m >> i & 1]
        return ColouredGraph((1,) * self.n_left + (2,) * len(self.masks), tuple(edges))

    def components(self) -> list["BipartitePattern"]:
        """Connected components, each canonicalised."""
        parent = list(range(self.n_left))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for m in self.masks:
            bits = [i for i in range(self.n_left) if m >> i & 1]
            for b in bits[1:]:
                parent[find(b)] = find(bits[0])
        groups: dict[int, list[int]] = {}
        for i in range(self.n_left):
            groups.setdefault(find(i), []).append(i)
        comps = []
        for members in groups.values():
            relabel = {v: j for j, v in enumerate(members)}
            sub = [_permute_mask(m, [relabel.get(i, 0) for i in range(self.n_left)])
                   for m in self.masks if find((m & -m).bit_length() - 1) == find(members[0])]
            comps.append(BipartitePattern.canonical(len(members), sub))
        return comps


def from_bipartite_graph(n_left, n_right, edges) -> BipartitePattern:
    """Pattern of a small bipartite graph; every right vertex must have a neighbour."""
    masks = [0] * n_right
    for u, v in edges:
        masks[v] |= 1 << u
    if any(m == 0 for m in masks):
        raise ValueError("isolated right vertex")
    return BipartitePattern.canonical(n_left, masks)


@lru_cache(maxsize=None)
def enumerate_classes(n_left: int, delta: int) -> tuple[BipartitePattern, ...]:
    """All classes with exactly ``n_left`` left vertices, degree <= delta and every
    right vertex non-isolated (the union over r of the classes of S_{l,r})."""
    types = [m for m in range(1, 1 << n_left) if bin(m).count("1") <= delta]
    found = set()

    def rec(start, masks, load):
        found.add(BipartitePattern.canonical(n_left, masks))
        for j in range(start, len(types)):
            t = types[j]
            new = [load[i] + (t >> i & 1) for i in range(n_left)]
            if max(new, default=0) <= delta:
                rec(j, masks + [t], new)

    rec(0, [], [0] * n_left)
    return tuple(sorted(found, key=lambda p: p.sort_key))


@lru_cache(maxsize=None)
def _surjections(l, lp):
    maps = [f for f in itertools.product(range(lp), repeat=l) if len(set(f)) == lp]
    return np.array(maps, dtype=np.int64).reshape(len(maps), l)


class _TargetTables:
    """Inclusion-exclusion tables for a fixed target K'."""

    def __init__(self, p: BipartitePattern):
        counts: dict[int, int] = {}
        for m in p.masks:
            counts[m] = counts.get(m, 0) + 1
        self.types = np.array(list(counts), dtype=np.int64)
        cs = list(counts.values())
        js = list(itertools.product(*(range(c + 1) for c in cs)))
        self.J = np.array(js, dtype=np.int64).reshape(len(js), len(cs))
        r = len(p.masks)
        self.coef = [(-1) ** (r - sum(j)) * math.prod(math.comb(c, x) for c, x in zip(cs, j))
                     for j in js]


class _SourceTables:
    """Mapped masks of a fixed source K under every surjection onto [l']."""

    def __init__(self, p: BipartitePattern):
        counts: dict[int, int] = {}
        for m in p.masks:
            counts[m] = counts.get(m, 0) + 1
        self.masks = list(counts)
        self.mult = np.array(list(counts.values()), dtype=np.int64)
        self.n_left = p.n_left
        self._maps = {}

    def mapped(self, lp):
        if lp not in self._maps:
            f = _surjections(self.n_left, lp)
            out = np.zeros((len(f), len(self.masks)), dtype=np.int64)
            for mi, m in enumerate(self.masks):
                for i in range(self.n_left):
                    if m >> i & 1:
                        out[:, mi] |= np.left_shift(1, f[:, i])
            self._maps[lp] = out
        return self._maps[lp]


def shom(k: BipartitePattern, kp: BipartitePattern, _src=None, _dst=None) -> int:
    """Number of vertex-surjective colour-preserving homomorphisms K -> K'."""
    if kp.n_left > k.n_left or kp.n_right > k.n_right:
        return 0
    if kp.n_left == 0:
        return 1 if k.n == 0 else 0
    if k.n_right == 0:
        # only the left side needs covering
        return len(_surjections(k.n_left, kp.n_left)) if kp.n_right == 0 else 0
    src = _src or _SourceTables(k)
    dst = _dst or _TargetTables(kp)
    amap = src.mapped(kp.n_left)
    if kp.n_right == 0:
        return 0
    nf = amap.shape[0]
    r, rp = k.n_right, kp.n_right
    # |sum| <= nf * 2^rp * rp^r bounds every intermediate
    if nf * (2 ** rp) * rp ** r < 2 ** 62:
        coef = np.array(dst.coef, dtype=np.int64)
        dtype = np.int64
    else:
        coef = np.array(dst.coef, dtype=object)
        dtype = object
    contains = (amap[:, :, None] & dst.types[None, None, :]) == amap[:, :, None]
    s = contains.astype(dtype) @ dst.J.T.astype(dtype)  # (nf, n_masks, n_j)
    terms = np.prod(s ** src.mult[None, :, None].astype(dtype), axis=1)
    return int((terms @ coef).sum())


class BipartiteBasis:
    """Classes with 1..l left vertices and degree <= delta in triangular order."""

    def __init__(self, l: int, delta: int):
        self.l = l
        self.delta = delta
        pats = [p for lp in range(1, l + 1) for p in enumerate_classes(lp, delta)]
        self.patterns = sorted(pats, key=lambda p: p.sort_key)
        self.index = {p: i for i, p in enumerate(self.patterns)}
        self._src = {}
        self._dst = {}

    def __len__(self):
        return len(self.patterns)

    def row(self, i: int) -> dict[int, int]:
        """Nonzero SHom entries of row i; columns left of the diagonal are provably zero."""
        return _row(self, i)


_ROW_CACHE: dict[tuple[int, BipartitePattern], dict[BipartitePattern, int]] = {}
_ROW_LOCK = threading.Lock()


def _row(basis: BipartiteBasis, i: int) -> dict[int, int]:
    k = basis.patterns[i]
    key = (basis.delta, k)
    cached = _ROW_CACHE.get(key)
    if cached is None:
        src = _SourceTables(k)
        cached = {}
        for kp in basis.patterns[i:]:
            if kp.n_left > k.n_left or kp.n_right > k.n_right:
                continue
            dst = basis._dst.get(kp)
            if dst is None:
                dst = basis._dst[kp] = _TargetTables(kp)
            v = shom(k, kp, src, dst)
            if v:
                cached[kp] = v
        if cached.get(k, 0) <= 0:
            raise AssertionError(f"zero diagonal SHom for {k}")
        with _ROW_LOCK:
            _ROW_CACHE[key] = cached
    return {basis.index[p]: v for p, v in cached.items() if p in basis.index}


@lru_cache(maxsize=None)
def bipartite_basis(l: int, delta: int) -> BipartiteBasis:
    return BipartiteBasis(l, delta)
