import itertools

import pytest
from hypothesis import given

from biscount.colsub import (build_shom_matrix, count_induced, enumerate_pattern_basis,
                             induced_vector, solve_upper)
from biscount.errors import CapExceeded, DegreeBoundError
from biscount.graphs import ColouredGraph, max_degree, to_coloured, uncoloured
from biscount.homcount import count_hom
from biscount.oracle import brute_ind, brute_shom

from conftest import EDGE12, PATH
from strategies import coloured_graphs


def test_basis_examples():
    b = enumerate_pattern_basis(1, 1, 2)
    assert [p.graph for p in b.representatives] == [ColouredGraph((1,), ())]
    b = enumerate_pattern_basis(1, 2, 1)
    assert len(b) == 3
    assert [len(p.graph.edges) for p in b.representatives] == [0, 1, 0]
    assert len(enumerate_pattern_basis(2, 1, 3)) == 2
    with pytest.raises(CapExceeded):
        enumerate_pattern_basis(1, 11, 3)


def test_basis_invariants():
    b = enumerate_pattern_basis(2, 4, 2)
    keys = [p.sort_key for p in b.representatives]
    assert keys == sorted(keys)
    assert len({p.form for p in b.representatives}) == len(b)
    for p in b.representatives:
        assert p.graph.n <= 4 and max_degree(p.graph) <= 2 and len(p.graph.edges) <= 4


def test_shom_matrix_triangular():
    b = enumerate_pattern_basis(2, 3, 2)
    rows = build_shom_matrix(b)
    reps = b.representatives
    for i, j in itertools.product(range(len(b)), repeat=2):
        v = brute_shom(reps[i].graph, reps[j].graph)
        assert rows[i].get(j, 0) == v
        if v and i != j:
            assert i < j
            gi, gj = reps[i].graph, reps[j].graph
            assert gj.n < gi.n or (gj.n == gi.n and len(gj.edges) > len(gi.edges))
    assert all(rows[i][i] >= 1 for i in range(len(b)))


def test_shom_matrix_two_isolated_to_one():
    b = enumerate_pattern_basis(1, 2, 1)
    two = b.position(ColouredGraph((1, 1), ()))
    one = b.position(ColouredGraph((1,), ()))
    assert build_shom_matrix(b)[two][one] == 1


def test_count_induced_examples():
    g = ColouredGraph((1, 2, 1, 1), ((0, 1),))
    assert count_induced(ColouredGraph((1,), ()), g, 3) == 3
    assert count_induced(EDGE12, to_coloured(PATH), 2) == 2
    assert count_induced(ColouredGraph((1, 1), ()), uncoloured(3), 1) == 3


def test_count_induced_colour_handling():
    g = ColouredGraph((1, 1, 3), ((0, 2),))
    assert count_induced(ColouredGraph((2,), ()), g, 3) == 0
    # host colours outside H are removed before counting
    assert count_induced(ColouredGraph((1, 1), ()), g, 3) == 1
    assert count_induced(ColouredGraph((), ()), g, 3) == 1


def test_count_induced_degree_check():
    with pytest.raises(DegreeBoundError):
        count_induced(EDGE12, to_coloured(PATH), 1)


def test_solve_upper_detects_bad_system():
    rows = {0: {0: 2, 1: 1}, 1: {1: 1}}
    assert solve_upper(rows, {0: 5, 1: 1}, [0]) == {0: 2, 1: 1}
    with pytest.raises(AssertionError):
        solve_upper(rows, {0: 4, 1: 1}, [0])


@given(coloured_graphs(min_n=1, max_n=4), coloured_graphs(max_n=14))
def test_agrees_with_brute(h, g):
    delta = max(3, max_degree(h), max_degree(g))
    assert count_induced(h, g, delta) == brute_ind(h, g)


@given(coloured_graphs(min_n=1, max_n=4, max_q=2), coloured_graphs(max_n=12, max_q=2))
def test_system_holds(h, g):
    if set(h.colours) - set(g.colours) or h.q > g.q:
        return
    hh = ColouredGraph(tuple(h.colours), h.edges)
    basis, rows, b, x = induced_vector(hh, g, 3)
    for i, row in rows.items():
        assert sum(v * x[j] for j, v in row.items()) == b[i]
        assert b[i] == count_hom(basis.representatives[i].graph, g)
        assert x[i] >= 0
