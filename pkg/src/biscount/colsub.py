"""Induced coloured subgraph counting through homomorphism counts.

For a pattern basis S' closed under the relevant homomorphic images,
``Hom(K, G) = sum_K' SHom(K, K') * Ind(K', G)``.  Ordering S' by
(vertex count descending, edge count ascending, canonical form) makes the
matrix ``A[K, K'] = SHom(K, K')`` upper triangular with a positive diagonal:
a vertex-surjective homomorphism between non-isomorphic patterns either
shrinks the vertex set or is a bijection that strictly adds edges.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field

from .errors import CapExceeded, DegreeBoundError
from .graphs import (DEFAULT_PATTERN_CAP, ColouredGraph, canonical_form,
                     induced_coloured_subgraph, max_degree)
from .homcount import HostIndex, count_hom
from .oracle import brute_shom


@dataclass(frozen=True)
class PatternClass:
    graph: ColouredGraph
    form: bytes

    @property
    def sort_key(self):
        return (-self.graph.n, len(self.graph.edges), self.form)


@dataclass
class PatternBasis:
    q: int
    k: int
    delta: int
    representatives: list[PatternClass]
    index: dict[bytes, int] = field(default_factory=dict)

    def __post_init__(self):
        self.index = {p.form: i for i, p in enumerate(self.representatives)}

    def __len__(self):
        return len(self.representatives)

    def position(self, h: ColouredGraph) -> int:
        return self.index[canonical_form(h, cap=max(self.k, DEFAULT_PATTERN_CAP))]


def _coloured_graphs(q, t, delta):
    """Coloured graphs on t vertices with sorted colour sequences and degree <= delta."""
    pairs = list(itertools.combinations(range(t), 2))
    for colours in itertools.combinations_with_replacement(range(1, q + 1), t):
        for bits in range(1 << len(pairs)):
            deg = [0] * t
            edges = []
            ok = True
            for i, (a, b) in enumerate(pairs):
                if bits >> i & 1:
                    deg[a] += 1
                    deg[b] += 1
                    if deg[a] > delta or deg[b] > delta:
                        ok = False
                        break
                    edges.append((a, b))
            if ok:
                yield ColouredGraph(colours, tuple(edges))


_BASES: dict[tuple[int, int, int], PatternBasis] = {}
_LOCK = threading.Lock()


def enumerate_pattern_basis(q: int, k: int, delta: int,
                            cap: int = DEFAULT_PATTERN_CAP) -> PatternBasis:
    """Representatives of all q-coloured graphs on 1..k vertices with degree <= delta."""
    if k > cap:
        raise CapExceeded(f"pattern size {k} exceeds cap {cap}")
    key = (q, k, delta)
    with _LOCK:
        if key not in _BASES:
            reps = {}
            for t in range(1, k + 1):
                for g in _coloured_graphs(q, t, delta):
                    form = canonical_form(g, cap)
                    reps.setdefault(form, PatternClass(g, form))
            ordered = sorted(reps.values(), key=lambda p: p.sort_key)
            _BASES[key] = PatternBasis(q, k, delta, ordered)
        return _BASES[key]


def _may_cover(k: ColouredGraph, k2: ColouredGraph) -> bool:
    """Cheap necessary condition for SHom(k, k2) > 0: every colour class of k2 has a preimage."""
    if k2.n > k.n:
        return False
    for c in set(k2.colours):
        if k2.colours.count(c) > k.colours.count(c):
            return False
    return True


_ROWS: dict[tuple[int, int, int], dict[int, dict[int, int]]] = {}


def shom_row(basis: PatternBasis, i: int) -> dict[int, int]:
    """Row i of A as a sparse dict {column: SHom}; raises if it has entries left of the diagonal."""
    cache = _ROWS.setdefault((basis.q, basis.k, basis.delta), {})
    if i in cache:
        return cache[i]
    reps = basis.representatives
    a = reps[i].graph
    row = {}
    for j, p in enumerate(reps):
        if _may_cover(a, p.graph):
            v = brute_shom(a, p.graph, guard=basis.k)
            if v:
                if j < i:
                    raise AssertionError(
                        f"SHom matrix not upper triangular at ({i}, {j}): basis order is wrong")
                row[j] = v
    if row.get(i, 0) <= 0:
        raise AssertionError(f"zero diagonal entry at {i}")
    cache[i] = row
    return row


def build_shom_matrix(basis: PatternBasis) -> list[dict[int, int]]:
    """All rows of A in basis order; triangularity is checked row by row."""
    return [shom_row(basis, i) for i in range(len(basis))]


def reachable(row, start) -> set[int]:
    """Indices reachable from ``start`` through nonzero entries of ``row(i)``."""
    seen = set()
    stack = list(start)
    while stack:
        i = stack.pop()
        if i not in seen:
            seen.add(i)
            stack.extend(j for j in row(i) if j not in seen)
    return seen


def solve_upper(rows, b: dict[int, int], wanted) -> dict[int, int]:
    """Back-substitution of A x = b on the indices reachable from ``wanted``.

    ``rows`` is indexable by row number; quotients are asserted integral and non-negative.
    """
    needed = reachable(rows.__getitem__, wanted)
    x = {}
    for i in sorted(needed, reverse=True):
        if b[i] == 0:
            x[i] = 0  # Hom(K, G) >= Ind(K, G), all terms are non-negative
            continue
        row = rows[i]
        acc = b[i] - sum(v * x[j] for j, v in row.items() if j != i)
        q, r = divmod(acc, row[i])
        if r or q < 0:
            raise AssertionError(f"non-integral or negative induced count at pattern {i}")
        x[i] = q
    return x


def _normalise(h: ColouredGraph, g: ColouredGraph):
    """Relabel the colours used by H to 1..q and drop host vertices of other colours.

    Returns ``None`` if H uses a colour absent from G.
    """
    used = sorted(set(h.colours))
    relabel = {c: i + 1 for i, c in enumerate(used)}
    if not set(used) <= set(g.colours):
        return None
    h2 = ColouredGraph(tuple(relabel[c] for c in h.colours), h.edges)
    keep = [v for v, c in enumerate(g.colours) if c in relabel]
    g2 = induced_coloured_subgraph(g, keep)
    g2 = ColouredGraph(tuple(relabel[c] for c in g2.colours), g2.edges)
    return h2, g2, len(used)


def induced_vector(h: ColouredGraph, g: ColouredGraph, delta: int):
    """Return (basis, A rows, b, x) restricted to the patterns reachable from H.

    Colours must already be normalised to [q].
    """
    q = max(h.colours, default=1)
    basis = enumerate_pattern_basis(q, h.n, delta)
    target = basis.position(h)
    reach = reachable(lambda i: shom_row(basis, i), [target])
    rows = {i: shom_row(basis, i) for i in reach}
    host = HostIndex(g)
    b = {i: count_hom(basis.representatives[i].graph, host) for i in reach}
    x = solve_upper(rows, b, [target])
    return basis, rows, b, x


def count_induced(h: ColouredGraph, g: ColouredGraph, delta: int) -> int:
    """Ind(H, G): vertex sets X of G with G[X] colour-isomorphic to H."""
    if max_degree(h) > delta or max_degree(g) > delta:
        raise DegreeBoundError(f"pattern or host degree exceeds {delta}")
    if h.n == 0:
        return 1
    norm = _normalise(h, g)
    if norm is None:
        return 0
    h2, g2, _ = norm
    basis, rows, b, x = induced_vector(h2, g2, delta)
    return x[basis.position(h2)]
