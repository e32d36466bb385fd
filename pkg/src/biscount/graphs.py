"""Graph data model: bipartite and vertex-coloured graphs, file formats,
canonical forms and random instance generators.

Vertices are dense 0-based integers in memory and 1-based in files.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable

from .errors import CapExceeded, GraphFormatError

DEFAULT_PATTERN_CAP = 10


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """A bipartite graph (U, V, E) with E a set of pairs (u, v), u in U, v in V."""

    n_left: int
    n_right: int
    edges: tuple[tuple[int, int], ...] = ()
    left_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    right_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_left < 0 or self.n_right < 0:
            raise ValueError("vertex counts must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        seen = set()
        left = [[] for _ in range(self.n_left)]
        right = [[] for _ in range(self.n_right)]
        for u, v in edges:
            if not (0 <= u < self.n_left and 0 <= v < self.n_right):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            left[u].append(v)
            right[v].append(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "left_adj", tuple(tuple(sorted(a)) for a in left))
        object.__setattr__(self, "right_adj", tuple(tuple(sorted(a)) for a in right))

    @property
    def n(self) -> int:
        return self.n_left + self.n_right

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.left_adj[u]

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.n_left, self.n_right, self.edge_set) == (
            other.n_left, other.n_right, other.edge_set)

    def __hash__(self):
        return hash((self.n_left, self.n_right, self.edge_set))

    def degrees(self) -> list[int]:
        return [len(a) for a in self.left_adj] + [len(a) for a in self.right_adj]


@dataclass(frozen=True, eq=False)
class ColouredGraph:
    """An undirected simple graph with a total colouring into positive integers."""

    colours: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()
    adj: tuple[frozenset, ...] = field(init=False, repr=False)

    def __post_init__(self):
        colours = tuple(int(c) for c in self.colours)
        if any(c < 1 for c in colours):
            raise ValueError("colours must be positive integers")
        n = len(colours)
        adj = [set() for _ in range(n)]
        norm = []
        for a, b in self.edges:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range")
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if b in adj[a]:
                raise ValueError(f"duplicate edge ({a}, {b})")
            adj[a].add(b)
            adj[b].add(a)
            norm.append((a, b))
        object.__setattr__(self, "colours", colours)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))

    @property
    def n(self) -> int:
        return len(self.colours)

    @property
    def q(self) -> int:
        return max(self.colours, default=0)

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def __eq__(self, other):
        if not isinstance(other, ColouredGraph):
            return NotImplemented
        return self.colours == other.colours and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((self.colours, self.edge_set()))


def uncoloured(n: int, edges: Iterable[tuple[int, int]] = ()) -> ColouredGraph:
    """A plain graph, represented as a monochromatic coloured graph."""
    return ColouredGraph((1,) * n, tuple(edges))


def disjoint_union(*graphs: ColouredGraph) -> ColouredGraph:
    colours, edges, off = [], [], 0
    for g in graphs:
        colours.extend(g.colours)
        edges.extend((a + off, b + off) for a, b in g.edges)
        off += g.n
    return ColouredGraph(tuple(colours), tuple(edges))


def bipartite_disjoint_union(*graphs: BipartiteGraph) -> BipartiteGraph:
    edges, ou, ov = [], 0, 0
    for g in graphs:
        edges.extend((u + ou, v + ov) for u, v in g.edges)
        ou += g.n_left
        ov += g.n_right
    return BipartiteGraph(ou, ov, tuple(edges))


def to_coloured(g: BipartiteGraph) -> ColouredGraph:
    """Left vertices become 0..|U|-1 with colour 1, right vertices follow with colour 2."""
    colours = (1,) * g.n_left + (2,) * g.n_right
    return ColouredGraph(colours, tuple((u, g.n_left + v) for u, v in g.edges))


def max_degree(g: BipartiteGraph | ColouredGraph) -> int:
    return max(g.degrees(), default=0)


def induced_coloured_subgraph(h: ColouredGraph, xs: Iterable[int]) -> ColouredGraph:
    """Subgraph induced on ``xs``; vertices are renumbered in increasing order."""
    xs = sorted(set(xs))
    for x in xs:
        if not 0 <= x < h.n:
            raise ValueError(f"vertex {x} out of range")
    index = {x: i for i, x in enumerate(xs)}
    edges = [(index[a], index[b]) for a, b in h.edges if a in index and b in index]
    return ColouredGraph(tuple(h.colours[x] for x in xs), tuple(edges))


def connected_components(h: ColouredGraph) -> list[list[int]]:
    seen = [False] * h.n
    comps = []
    for s in range(h.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in h.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------- canonical form

def canonical_form(h: ColouredGraph, cap: int = DEFAULT_PATTERN_CAP) -> bytes:
    """Byte string equal for two coloured graphs iff they are colour-isomorphic.

    Vertices are first split into cells by (colour, degree), both isomorphism
    invariants; the form is the lexicographic minimum of the adjacency bit string
    over all orderings that list cells in increasing order and permute within cells.
    """
    if h.n > cap:
        raise CapExceeded(f"pattern has {h.n} vertices, cap is {cap}")
    deg = h.degrees()
    cells: dict[tuple[int, int], list[int]] = {}
    for v in range(h.n):
        cells.setdefault((h.colours[v], deg[v]), []).append(v)
    keys = sorted(cells)
    header = repr((h.n, [(k[0], k[1], len(cells[k])) for k in keys])).encode()
    best = None
    adj = h.adj
    for parts in itertools.product(*(itertools.permutations(cells[k]) for k in keys)):
        order = [v for part in parts for v in part]
        bits = 0
        for i in range(1, len(order)):
            ai = adj[order[i]]
            for j in range(i):
                bits = (bits << 1) | (order[j] in ai)
        if best is None or bits < best:
            best = bits
    nbits = h.n * (h.n - 1) // 2
    return header + b"|" + (best or 0).to_bytes((nbits + 7) // 8, "big")


# ---------------------------------------------------------------- file formats

def _lines(text):
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _ints(tokens, count, lineno):
    if len(tokens) != count:
        raise GraphFormatError(f"expected {count} fields, got {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError("non-integer field", lineno) from None


def parse_bipartite(text: str | bytes) -> BipartiteGraph:
    """Parse the ``p bis <|U|> <|V|> <m>`` format with ``e <u> <v>`` edge lines."""
    header = None
    edges, seen = [], set()
    for lineno, tok in _lines(text):
        if tok[0] == "p":
            if header is not None:
                raise GraphFormatError("second header line", lineno)
            if len(tok) < 2 or tok[1] != "bis":
                raise GraphFormatError("expected 'p bis' header", lineno)
            header = _ints(tok[2:], 3, lineno)
            if min(header) < 0:
                raise GraphFormatError("negative count in header", lineno)
        elif tok[0] == "e":
            if header is None:
                raise GraphFormatError("edge before header", lineno)
            u, v = _ints(tok[1:], 2, lineno)
            if not (1 <= u <= header[0] and 1 <= v <= header[1]):
                raise GraphFormatError(f"endpoint out of range: e {u} {v}", lineno)
            if (u, v) in seen:
                raise GraphFormatError(f"duplicate edge: e {u} {v}", lineno)
            seen.add((u, v))
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type {tok[0]!r}", lineno)
    if header is None:
        raise GraphFormatError("missing 'p bis' header")
    if len(edges) != header[2]:
        raise GraphFormatError(f"header announces {header[2]} edges, found {len(edges)}")
    return BipartiteGraph(header[0], header[1], tuple(edges))


def serialize_bipartite(g: BipartiteGraph) -> str:
    out = [f"p bis {g.n_left} {g.n_right} {len(g.edges)}"]
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(out) + "\n"


def parse_coloured(text: str | bytes) -> ColouredGraph:
    """Parse ``p col <n> <m> <q>``, then ``v <index> <colour>`` and ``e <a> <b>`` lines."""
    header = None
    colours: dict[int, int] = {}
    edges, seen = [], set()
    for lineno, tok in _lines(text):
        if tok[0] == "p":
            if header is not None:
                raise GraphFormatError("second header line", lineno)
            if len(tok) < 2 or tok[1] != "col":
                raise GraphFormatError("expected 'p col' header", lineno)
            header = _ints(tok[2:], 3, lineno)
            if min(header) < 0:
                raise GraphFormatError("negative count in header", lineno)
        elif header is None:
            raise GraphFormatError("data before header", lineno)
        elif tok[0] == "v":
            i, c = _ints(tok[1:], 2, lineno)
            if not 1 <= i <= header[0]:
                raise GraphFormatError(f"vertex {i} out of range", lineno)
            if not 1 <= c <= header[2]:
                raise GraphFormatError(f"colour {c} outside [1, {header[2]}]", lineno)
            if i in colours:
                raise GraphFormatError(f"vertex {i} coloured twice", lineno)
            colours[i] = c
        elif tok[0] == "e":
            a, b = _ints(tok[1:], 2, lineno)
            if not (1 <= a <= header[0] and 1 <= b <= header[0]):
                raise GraphFormatError(f"endpoint out of range: e {a} {b}", lineno)
            if a == b:
                raise GraphFormatError(f"self-loop: e {a} {b}", lineno)
            key = frozenset((a, b))
            if key in seen:
                raise GraphFormatError(f"duplicate edge: e {a} {b}", lineno)
            seen.add(key)
            edges.append((a - 1, b - 1))
        else:
            raise GraphFormatError(f"unknown line type {tok[0]!r}", lineno)
    if header is None:
        raise GraphFormatError("missing 'p col' header")
    n, m, _ = header
    if len(colours) != n:
        raise GraphFormatError(f"{n - len(colours)} vertices without a colour")
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    return ColouredGraph(tuple(colours[i] for i in range(1, n + 1)), tuple(edges))


def serialize_coloured(g: ColouredGraph) -> str:
    out = [f"p col {g.n} {len(g.edges)} {g.q}"]
    out += [f"v {i + 1} {c}" for i, c in enumerate(g.colours)]
    out += [f"e {a + 1} {b + 1}" for a, b in g.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- generators

def random_bounded_degree_bipartite(n_left: int, n_right: int, delta: int, seed: int,
                                    max_edges: int | None = None) -> BipartiteGraph:
    """Propose all pairs of U x V in seeded random order; keep an edge if both
    endpoints still have degree below ``delta``.  ``max_edges`` stops early."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n_left) for v in range(n_right)]
    rng.shuffle(pairs)
    dl, dr = [0] * n_left, [0] * n_right
    edges = []
    for u, v in pairs:
        if max_edges is not None and len(edges) >= max_edges:
            break
        if dl[u] <= delta - 1 and dr[v] <= delta - 1:
            dl[u] += 1
            dr[v] += 1
            edges.append((u, v))
    return BipartiteGraph(n_left, n_right, tuple(edges))


def random_bounded_degree_graph(n: int, delta: int, seed: int, q: int = 1,
                                max_edges: int | None = None) -> ColouredGraph:
    """Coloured analogue of :func:`random_bounded_degree_bipartite` with uniform colours in [q]."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    rng = random.Random(seed)
    colours = tuple(rng.randint(1, q) for _ in range(n))
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for a, b in pairs:
        if max_edges is not None and len(edges) >= max_edges:
            break
        if deg[a] < delta and deg[b] < delta:
            deg[a] += 1
            deg[b] += 1
            edges.append((a, b))
    return ColouredGraph(colours, tuple(edges))
