"""Counting colour-preserving homomorphisms into bounded-degree hosts.

A disconnected pattern factors over its components.  For a connected pattern
the images are enumerated along a traversal: the first vertex ranges over the
host vertices of its colour and every later vertex over the neighbours of its
(already placed) traversal parent, so the search tree has at most
n * (Delta*k + k)^(k-1) nodes.
"""
from __future__ import annotations

from collections import deque
from math import prod

from .errors import CapExceeded, DegreeBoundError
from .graphs import ColouredGraph, connected_components, induced_coloured_subgraph, max_degree

DEFAULT_HOM_CAP = 16


class HostIndex:
    """Colour buckets of a host graph, built once per host."""

    def __init__(self, g: ColouredGraph):
        self.graph = g
        self.adj = g.adj
        self.colours = g.colours
        buckets: dict[int, list[int]] = {}
        for v, c in enumerate(g.colours):
            buckets.setdefault(c, []).append(v)
        self.by_colour = buckets
        by_nb_colour = []
        for v in range(g.n):
            d: dict[int, set] = {}
            for w in g.adj[v]:
                d.setdefault(g.colours[w], set()).add(w)
            by_nb_colour.append({c: frozenset(ws) for c, ws in d.items()})
        self.adj_by_colour = by_nb_colour


def _is_connected(h: ColouredGraph, vertices: set) -> bool:
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in h.adj[x]:
            if y in vertices and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vertices)


def build_traversal(h: ColouredGraph, start: int | None = None) -> list[int]:
    """Breadth-first vertex order of a connected pattern."""
    if h.n == 0:
        raise ValueError("empty pattern has no traversal")
    if start is None:
        start = 0
    order, parent = _bfs(h, start, set(range(h.n)))
    if len(order) != h.n:
        raise ValueError("pattern is disconnected")
    return order


def is_traversal(h: ColouredGraph, order) -> bool:
    placed = set()
    for i, v in enumerate(order):
        if i and v not in placed and not (h.adj[v] & placed):
            return False
        placed.add(v)
    return placed == set(range(h.n))


def _bfs(h, start, allowed):
    order, parent = [start], {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in sorted(h.adj[x]):
            if y in allowed and y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)
    return order, parent


class _Plan:
    """Search plan for one connected pattern.

    ``deferred`` vertices are pairwise non-adjacent and have all neighbours in the
    core; once the core is placed each contributes an independent factor (the number
    of colour-matching common neighbours of its neighbours' images), so they are
    counted instead of enumerated.  The core keeps a traversal order.
    """

    def __init__(self, h: ColouredGraph):
        deg = h.degrees()
        core = set(range(h.n))
        deferred = []
        for v in sorted(range(h.n), key=lambda v: (deg[v], v)):
            if deg[v] == 0 or any(w in deferred for w in h.adj[v]):
                continue
            rest = core - {v}
            if rest and _is_connected(h, rest):
                deferred.append(v)
                core = rest
        start = max(core, key=lambda v: (deg[v], -v))
        order, parent = _bfs(h, start, core)
        pos = {v: i for i, v in enumerate(order)}
        self.colours = [h.colours[v] for v in order]
        self.parent = [None if parent[v] is None else pos[parent[v]] for v in order]
        # edges from each core vertex back to earlier core vertices, excluding the parent
        self.back = [[pos[w] for w in h.adj[v] if w in pos and pos[w] < i and pos[w] != self.parent[i]]
                     for i, v in enumerate(order)]
        # deferred vertices with equal (colour, neighbours) contribute equal factors
        groups: dict[tuple, int] = {}
        for d in deferred:
            key = (h.colours[d], tuple(sorted(pos[w] for w in h.adj[d])))
            groups[key] = groups.get(key, 0) + 1
        self.deferred = [(c, nbs, mult) for (c, nbs), mult in groups.items()]
        self.k = h.n


def _count_connected(plan: _Plan, host: HostIndex, stats=None) -> int:
    adj, colours, by_colour = host.adj, host.colours, host.adj_by_colour
    size = len(plan.colours)
    image = [0] * size
    explored = 0
    empty = frozenset()

    def tail():
        total = 1
        for colour, nbs, mult in plan.deferred:
            common = by_colour[image[nbs[0]]].get(colour, empty)
            for j in nbs[1:]:
                common = common & adj[image[j]]
            if not common:
                return 0
            total *= len(common) ** mult
        return total

    def extend(i):
        nonlocal explored
        if i == size:
            return tail()
        colour, back = plan.colours[i], plan.back[i]
        total = 0
        for w in adj[image[plan.parent[i]]]:
            if colours[w] != colour:
                continue
            aw = adj[w]
            if all(image[j] in aw for j in back):
                explored += 1
                image[i] = w
                total += extend(i + 1)
        return total

    total = 0
    for w in host.by_colour.get(plan.colours[0], ()):
        explored += 1
        image[0] = w
        total += extend(1)
    if stats is not None:
        stats["prefixes"] = stats.get("prefixes", 0) + explored
    return total


def count_hom(h: ColouredGraph, g: ColouredGraph | HostIndex, delta: int | None = None,
              cap: int = DEFAULT_HOM_CAP, stats: dict | None = None) -> int:
    """Hom(H, G) for coloured graphs.

    ``delta`` (if given) is checked against the host degree.  ``stats`` receives the
    number of search-tree prefixes visited under key ``"prefixes"``.
    """
    host = g if isinstance(g, HostIndex) else HostIndex(g)
    if h.n > cap:
        raise CapExceeded(f"pattern has {h.n} vertices, cap is {cap}")
    if delta is not None and max_degree(host.graph) > delta:
        raise DegreeBoundError(f"host degree {max_degree(host.graph)} exceeds {delta}")
    counts = []
    for comp in connected_components(h):
        part = h if len(comp) == h.n else induced_coloured_subgraph(h, comp)
        c = _count_connected(_Plan(part), host, stats)
        if not c:
            return 0
        counts.append(c)
    return prod(counts)
