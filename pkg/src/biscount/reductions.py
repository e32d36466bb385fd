"""Counting reductions as executable pipelines.

Each pipeline builds the auxiliary instances, asks a pluggable oracle for the
counts it needs, solves the resulting exact linear system where there is one,
and returns the target count.  Pass a ``Trace`` to record every step.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fptcount, oracle
from .errors import BiscountError, SingularMatrixError
from .graphs import BipartiteGraph, ColouredGraph, uncoloured

DEFAULT_GADGET_BUDGET = 200_000


# ----------------------------------------------------------------- linear algebra

def solve_exact(m, w) -> list[Fraction]:
    """Solve M x = w over the rationals by Gaussian elimination with row pivoting."""
    n = len(m)
    if any(len(row) != n for row in m) or len(w) != n:
        raise ValueError("matrix must be square and match the vector length")
    a = [[Fraction(v) for v in row] + [Fraction(w[i])] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def det_exact(m) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fraction(1)
    a = [[Fraction(v) for v in row] for row in m]
    sign, prev = 1, Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matvec(m, x):
    return [sum(Fraction(a) * b for a, b in zip(row, x)) for row in m]


def binomial_matrix(s: int) -> list[list[int]]:
    """M[i][j] = C(s + i, j) for i, j in 0..s."""
    return [[math.comb(s + i, j) for j in range(s + 1)] for i in range(s + 1)]


def vandermonde_matrix(n: int) -> list[list[int]]:
    """M[i][r] = 2^(i (n - r)) for i in 1..n+1, r in 0..n."""
    return [[2 ** (i * (n - r)) for r in range(n + 1)] for i in range(1, n + 2)]


def _as_counts(x) -> list[int]:
    out = []
    for v in x:
        if v.denominator != 1 or v < 0:
            raise AssertionError(f"recovered count {v} is not a non-negative integer")
        out.append(int(v))
    return out


# ----------------------------------------------------------------- oracles and traces

@dataclass(frozen=True)
class CountingOracle:
    name: str
    is_k: Callable[[BipartiteGraph, int], int]
    lis: Callable[[BipartiteGraph, int], int]
    maxlis: Callable[[BipartiteGraph, int], tuple[int, int]]


def brute_oracle(guard: int | None = None) -> CountingOracle:
    """Brute-force answers; LIS and MAXLIS enumerate only the left side."""
    return CountingOracle(
        "brute",
        lambda g, k: oracle.brute_is_k(g, k, guard),
        lambda g, l: oracle.brute_lis_left(g, l, guard),
        lambda g, l: oracle.brute_maxlis_left(g, l, guard),
    )


def bounded_oracle(delta: int = 3) -> CountingOracle:
    """Fixed-parameter answers; every queried graph must have degree <= delta."""
    return CountingOracle(
        f"bounded(delta={delta})",
        lambda g, k: fptcount.count_is_k_bounded(g, k, delta),
        lambda g, l: fptcount.count_lis_bounded(g, l, delta),
        lambda g, l: fptcount.count_maxlis_bounded(g, l, delta),
    )


def _describe(name, g):
    if isinstance(g, BipartiteGraph):
        return {"name": name, "n_left": g.n_left, "n_right": g.n_right, "m": len(g.edges)}
    return {"name": name, "n": g.n, "m": len(g.edges)}


def _render(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_render(x) for x in v]
    if isinstance(v, dict):
        return {k: _render(x) for k, x in v.items()}
    return v


@dataclass
class Trace:
    """Audit record of one pipeline run; counts are rendered as decimal strings."""
    reduction: str = ""
    parameters: dict = field(default_factory=dict)
    instances: list = field(default_factory=list)
    oracle_answers: list = field(default_factory=list)
    matrix: list | None = None
    solution: list | None = None
    result: object = None

    def to_dict(self) -> dict:
        d = {
            "reduction": self.reduction,
            "parameters": self.parameters,
            "instances": self.instances,
            "oracle_answers": _render(self.oracle_answers),
            "matrix": _render(self.matrix),
            "solution": _render(self.solution),
            "result": _render(self.result),
        }
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _start(trace, name, **params):
    if trace is not None:
        trace.reduction = name
        trace.parameters = {k: _render(v) for k, v in params.items()}


def _query(trace, name, g, fn, *args):
    ans = fn(g, *args)
    if trace is not None:
        trace.instances.append(_describe(name, g))
        trace.oracle_answers.append(ans)
    return ans


def _finish(trace, result, matrix=None, solution=None):
    if trace is not None:
        trace.matrix = matrix
        trace.solution = solution
        trace.result = result
    return result


# ----------------------------------------------------------------- pipelines

def bis_via_summation(g: BipartiteGraph, orc: CountingOracle | None = None, via: str = "is_k",
                      trace: Trace | None = None) -> int:
    """IS(G) as the sum of IS_k over k = 0..n, or of LIS_l over l = 0..|U|."""
    orc = orc or brute_oracle()
    _start(trace, "bis_via_summation", via=via)
    if via == "is_k":
        total = sum(_query(trace, f"G(k={k})", g, orc.is_k, k) for k in range(g.n + 1))
    elif via == "lis":
        total = sum(_query(trace, f"G(l={l})", g, orc.lis, l) for l in range(g.n_left + 1))
    else:
        raise ValueError(f"unknown summation {via!r}")
    return _finish(trace, total)


def matching_padded(g: BipartiteGraph, size: int) -> BipartiteGraph:
    """G plus ``size`` disjoint edges; their left ends follow U and right ends follow V."""
    edges = list(g.edges) + [(g.n_left + j, g.n_right + j) for j in range(size)]
    return BipartiteGraph(g.n_left + size, g.n_right + size, tuple(edges))


def maxis_via_maxlis(g: BipartiteGraph, orc: CountingOracle | None = None,
                     trace: Trace | None = None) -> int:
    """MAXIS(G) from MAXLIS_s queries, s = |U|.

    With G_i = G plus a matching of s + i edges, every s-left-maximum set of G_i
    takes one endpoint from each matching edge, so
    MAXLIS_s(G_i) = sum_j x_j C(s + i, j) where x_j counts maximum independent
    sets of G with s - j left vertices.
    """
    orc = orc or brute_oracle()
    s = g.n_left
    _start(trace, "maxis_via_maxlis", s=s)
    w = []
    for i in range(s + 1):
        gi = matching_padded(g, s + i)
        w.append(_query(trace, f"G_{i}", gi, orc.maxlis, s)[1])
    m = binomial_matrix(s)
    x = solve_exact(m, w)
    if matvec(m, x) != w:
        raise AssertionError("binomial system solution does not reproduce the oracle answers")
    counts = _as_counts(x)
    return _finish(trace, sum(counts), m, counts)


def split_graph(g: ColouredGraph, clones: int = 1) -> BipartiteGraph:
    """Left copy u_a and right copies (v_b, c) for c < clones, adjacent iff a = b or ab is an edge."""
    n = g.n
    edges = []
    for a in range(n):
        for b in sorted(g.adj[a] | {a}):
            edges.extend((a, b * clones + c) for c in range(clones))
    return BipartiteGraph(n, n * clones, tuple(edges))


def domsets_via_lis(g: ColouredGraph, k: int, orc: CountingOracle | None = None,
                    trace: Trace | None = None) -> int:
    """Number of size-k dominating sets of an uncoloured graph from LIS_k queries.

    LIS_k(G'_i) = sum_r 2^(i (n - r)) Z_{k,r}, where Z_{k,r} counts k-subsets
    whose closed neighbourhood has r vertices; Z_{k,n} is the answer.
    """
    orc = orc or brute_oracle()
    n = g.n
    _start(trace, "domsets_via_lis", k=k, n=n)
    if k < 0 or k > n:
        return _finish(trace, 0)
    w = [_query(trace, f"G'_{i}", split_graph(g, i), orc.lis, k) for i in range(1, n + 2)]
    m = vandermonde_matrix(n)
    z = solve_exact(m, w)
    if matvec(m, z) != w:
        raise AssertionError("Vandermonde solution does not reproduce the oracle answers")
    counts = _as_counts(z)
    return _finish(trace, counts[n], m, counts)


def rainbow_biclique(t: int) -> ColouredGraph:
    """K_{t,t} with colours 1..t on one side and t+1..2t on the other."""
    edges = tuple((a, t + b) for a in range(t) for b in range(t))
    return ColouredGraph(tuple(range(1, 2 * t + 1)), edges)


def _side_relabel(t: int, h: ColouredGraph) -> dict[int, int]:
    """Colour permutation moving one side of the biclique H onto [t]."""
    if h.n != 2 * t or sorted(h.colours) != list(range(1, 2 * t + 1)):
        raise ValueError("H must have 2t vertices using each colour of [2t] exactly once")
    if len(h.edges) != t * t or any(len(a) != t for a in h.adj):
        raise ValueError("H must be a balanced biclique K_{t,t}")
    side = sorted(h.adj[0] if t else ())
    other = sorted(set(range(h.n)) - set(side))
    order = sorted(other, key=lambda v: h.colours[v]) + sorted(side, key=lambda v: h.colours[v])
    return {h.colours[v]: i + 1 for i, v in enumerate(order)}


def rainbow_restriction(t: int, g: ColouredGraph, colours) -> BipartiteGraph:
    """Complemented bipartite graph on the vertices of G whose colour lies in ``colours``.

    Left: colours in [t]; right: colours in [t+1, 2t]; u ~ v iff uv is not an edge of G.
    """
    keep = set(colours)
    left = [v for v in range(g.n) if g.colours[v] <= t and g.colours[v] in keep]
    right = [v for v in range(g.n) if t < g.colours[v] <= 2 * t and g.colours[v] in keep]
    edges = tuple((i, j) for i, u in enumerate(left) for j, v in enumerate(right)
                  if v not in g.adj[u])
    return BipartiteGraph(len(left), len(right), edges)


def rainbow_via_is_k(t: int, g: ColouredGraph, orc: CountingOracle | None = None,
                     h: ColouredGraph | None = None, trace: Trace | None = None) -> int:
    """Sub(G, H) for the 2t-coloured biclique H by inclusion-exclusion over colour sets.

    IS_{2t}(G_S) counts 2t-sets with colours in S whose cross pairs are all edges
    of G; the alternating sum keeps those using every colour exactly once.
    """
    orc = orc or brute_oracle()
    if h is not None:
        relabel = _side_relabel(t, h)
        g = ColouredGraph(tuple(relabel.get(c, c) for c in g.colours), g.edges)
    _start(trace, "rainbow_via_is_k", t=t)
    total = 0
    coeffs = []
    for size in range(2 * t + 1):
        for s in itertools.combinations(range(1, 2 * t + 1), size):
            gs = rainbow_restriction(t, g, s)
            c = _query(trace, f"G_{{{','.join(map(str, s))}}}", gs, orc.is_k, 2 * t)
            sign = (-1) ** (2 * t - size)
            coeffs.append(sign)
            total += sign * c
    if total < 0:
        raise AssertionError("negative inclusion-exclusion total")
    return _finish(trace, total, [coeffs])


def kbis_to_clique(g: BipartiteGraph, k: int) -> tuple[ColouredGraph, int]:
    """Graph on U then V whose k-cliques are the size-k independent sets of G."""
    nu, n = g.n_left, g.n
    edges = list(itertools.combinations(range(nu), 2))
    edges += list(itertools.combinations(range(nu, n), 2))
    edges += [(u, nu + v) for u in range(nu) for v in range(g.n_right) if not g.has_edge(u, v)]
    return uncoloured(n, edges), k


@dataclass(frozen=True)
class CliqueGadget:
    graph: BipartiteGraph
    l: int
    t: int
    powered: ColouredGraph


def clique_gadget(g: ColouredGraph, k: int, c: int = 0,
                  budget: int = DEFAULT_GADGET_BUDGET) -> CliqueGadget:
    """Incidence graph of the powered, anchored graph.

    G' replaces each vertex of G by t = n^(2c) pairwise non-adjacent copies, joins
    copies of adjacent vertices, and adds a disjoint k-clique.  In the incidence
    graph G'' (left: edges of G', right: vertices of G') an l-left set with
    l = C(k, 2) is maximum exactly when its edges span a k-clique, so
    MAXLIS_l(G'') = Cliques_k(G') = t^k Cliques_k(G) + 1.
    """
    if k < 2:
        raise ValueError("the anchored identity needs k >= 2")
    n = g.n
    t = n ** (2 * c)
    n_vertices = n * t + k
    n_edges = len(g.edges) * t * t + math.comb(k, 2)
    if n_vertices + n_edges > budget:
        raise BiscountError(f"gadget would have {n_vertices + n_edges} elements, budget is {budget}")
    edges = [(a * t + x, b * t + y) for a, b in g.edges for x in range(t) for y in range(t)]
    anchor = range(n * t, n * t + k)
    edges += list(itertools.combinations(anchor, 2))
    powered = uncoloured(n_vertices, edges)
    incidence = [(i, end) for i, e in enumerate(powered.edges) for end in e]
    return CliqueGadget(BipartiteGraph(len(powered.edges), n_vertices, tuple(incidence)),
                        math.comb(k, 2), t, powered)


def cliques_via_gadget(g: ColouredGraph, k: int, orc: CountingOracle | None = None, c: int = 0,
                       trace: Trace | None = None) -> int:
    """Cliques_k(G) recovered from MAXLIS_l of the gadget."""
    orc = orc or brute_oracle()
    _start(trace, "clique_gadget", k=k, c=c)
    gad = clique_gadget(g, k, c)
    size, count = _query(trace, "G''", gad.graph, orc.maxlis, gad.l)
    if size != gad.l + gad.graph.n_right - k:
        raise AssertionError("maximum left set does not span a k-clique")
    q, r = divmod(count - 1, gad.t ** k)
    if r:
        raise AssertionError("gadget count is not t^k * Cliques_k + 1")
    return _finish(trace, q, solution=[count])


def cliques_via_complement(g: BipartiteGraph, k: int, trace: Trace | None = None) -> int:
    """IS_k(G) computed as Cliques_k of the complement construction."""
    _start(trace, "clique_complement", k=k)
    gc, _ = kbis_to_clique(g, k)
    c = oracle.brute_cliques(gc, k)
    if trace is not None:
        trace.instances.append(_describe("G'", gc))
        trace.oracle_answers.append(c)
    return _finish(trace, c)
