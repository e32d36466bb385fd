import itertools

import pytest
from hypothesis import given

from biscount.errors import CapExceeded, GraphFormatError
from biscount.graphs import (BipartiteGraph, ColouredGraph, canonical_form,
                             induced_coloured_subgraph, max_degree, parse_bipartite,
                             parse_coloured, random_bounded_degree_bipartite,
                             serialize_bipartite, serialize_coloured, to_coloured, uncoloured)
from biscount.oracle import is_isomorphic

from conftest import K11, K22, PATH, TRIANGLE
from strategies import any_coloured_graphs, bipartite_graphs, coloured_graphs


def test_parse_smallest():
    g = parse_bipartite("p bis 1 1 1\ne 1 1")
    assert g == K11 and len(g.edges) == 1


def test_parse_path():
    assert parse_bipartite("p bis 2 1 2\ne 1 1\ne 2 1") == PATH


def test_parse_comments_and_bytes():
    g = parse_bipartite(b"c hello\np bis 2 1 2\nc mid\ne 1 1\ne 2 1\n")
    assert g == PATH


@pytest.mark.parametrize("text, line", [
    ("p bis 1 1 1\ne 2 1", 2),
    ("p bis 2 2 2\ne 1 1\ne 1 1", 3),
    ("p bis 1 1 1\nx 1 1", 2),
    ("p bis 1 1 1\ne 1", 2),
    ("p bis 1 one 1", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(GraphFormatError) as err:
        parse_bipartite(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_parse_edge_count_mismatch():
    with pytest.raises(GraphFormatError):
        parse_bipartite("p bis 2 2 2\ne 1 1")
    with pytest.raises(GraphFormatError):
        parse_bipartite("e 1 1")


def test_parse_coloured_errors():
    with pytest.raises(GraphFormatError):
        parse_coloured("p col 2 1 2\nv 1 1\nv 2 1\ne 1 1")
    with pytest.raises(GraphFormatError):
        parse_coloured("p col 2 0 2\nv 1 1")
    with pytest.raises(GraphFormatError):
        parse_coloured("p col 1 0 1\nv 1 2")


def test_graph_validation():
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, ((0, 1),))
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, ((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        ColouredGraph((1, 1), ((0, 0),))
    with pytest.raises(ValueError):
        ColouredGraph((1, 1), ((0, 1), (1, 0)))


def test_adjacency_sorted_and_consistent():
    g = BipartiteGraph(2, 3, ((1, 2), (0, 2), (1, 0)))
    assert g.left_adj == ((2,), (0, 2))
    assert g.right_adj == ((1,), (), (0, 1))
    assert g.n == 5


def test_to_coloured_examples():
    c = to_coloured(K11)
    assert c.colours == (1, 2) and c.edge_set() == {frozenset((0, 1))}
    empty = to_coloured(BipartiteGraph(2, 3))
    assert empty.colours == (1, 1, 2, 2, 2) and not empty.edges
    p = to_coloured(PATH)
    # U = {u1, u2} then V = {v1}: the coloured path is u1 - v1 - u2
    assert p.colours == (1, 1, 2)
    assert is_isomorphic(p, ColouredGraph((1, 2, 1), ((0, 1), (1, 2))))


@given(bipartite_graphs())
def test_to_coloured_preserves_sizes(g):
    c = to_coloured(g)
    assert c.n == g.n and len(c.edges) == len(g.edges)
    assert c.degrees() == g.degrees()


def test_max_degree():
    assert max_degree(K11) == 1
    assert max_degree(K22) == 2
    assert max_degree(uncoloured(5)) == 0


def test_induced_subgraph_examples():
    h = ColouredGraph((1, 2, 1), ((0, 1), (1, 2)))
    assert induced_coloured_subgraph(h, []) == ColouredGraph((), ())
    assert induced_coloured_subgraph(h, range(3)) == h
    assert induced_coloured_subgraph(h, [1]) == ColouredGraph((2,), ())
    with pytest.raises(ValueError):
        induced_coloured_subgraph(h, [3])


def test_generator_examples():
    assert random_bounded_degree_bipartite(3, 3, 0, 5).edges == ()
    assert random_bounded_degree_bipartite(4, 4, 3, 7) == random_bounded_degree_bipartite(4, 4, 3, 7)
    assert max_degree(random_bounded_degree_bipartite(4, 4, 2, 7)) <= 2


@given(bipartite_graphs(max_n=16))
def test_bipartite_round_trip(g):
    text = serialize_bipartite(g)
    assert parse_bipartite(text) == g
    assert serialize_bipartite(parse_bipartite(text)) == text


@given(coloured_graphs(max_n=10))
def test_coloured_round_trip(g):
    text = serialize_coloured(g)
    assert parse_coloured(text) == g
    assert serialize_coloured(parse_coloured(text)) == text


def test_canonical_form_examples():
    a = ColouredGraph((1, 2, 1), ((0, 1), (1, 2)))
    b = ColouredGraph((2, 1, 1), ((0, 1), (0, 2)))
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(ColouredGraph((1, 2), ((0, 1),))) != canonical_form(ColouredGraph((1, 2), ()))
    assert canonical_form(ColouredGraph((1,), ())) != canonical_form(ColouredGraph((2,), ()))
    with pytest.raises(CapExceeded):
        canonical_form(uncoloured(11))


def test_canonical_form_large_colours():
    assert canonical_form(ColouredGraph((300,), ())) != canonical_form(ColouredGraph((44,), ()))


@given(any_coloured_graphs(max_n=6), any_coloured_graphs(max_n=6))
def test_canonical_form_congruence_random(a, b):
    assert (canonical_form(a) == canonical_form(b)) == is_isomorphic(a, b)


@given(any_coloured_graphs(max_n=7))
def test_canonical_form_relabel_invariant(a):
    perm = list(reversed(range(a.n)))
    b = ColouredGraph(tuple(a.colours[perm[i]] for i in range(a.n)),
                      tuple((perm.index(x), perm.index(y)) for x, y in a.edges))
    assert canonical_form(a) == canonical_form(b)


def test_canonical_form_congruence_exhaustive_four_vertices():
    # every 2-coloured graph on 4 vertices, compared pairwise
    pairs = list(itertools.combinations(range(4), 2))
    graphs = [ColouredGraph(cols, tuple(p for i, p in enumerate(pairs) if bits >> i & 1))
              for cols in itertools.product((1, 2), repeat=4) for bits in range(64)]
    forms = [canonical_form(g) for g in graphs]
    reps = {}
    for g, f in zip(graphs, forms):
        reps.setdefault(f, g)
    for g, f in zip(graphs, forms):
        assert is_isomorphic(g, reps[f])
    reps = list(reps.values())
    for a, b in itertools.combinations(reps, 2):
        assert not is_isomorphic(a, b)
