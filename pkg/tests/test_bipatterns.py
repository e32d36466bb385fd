import itertools
import random

import pytest
from hypothesis import given, strategies as st

from biscount.bipatterns import (BipartitePattern, bipartite_basis, canonical_masks,
                                 enumerate_classes, from_bipartite_graph, shom)
from biscount.graphs import canonical_form
from biscount.oracle import brute_shom, is_isomorphic


def small_patterns(max_left=3, max_n=7, delta=3):
    return [p for l in range(1, max_left + 1) for p in enumerate_classes(l, delta) if p.n <= max_n]


def test_class_counts():
    # checked against generic canonical forms below for the small cases
    assert [len(enumerate_classes(l, 3)) for l in (1, 2, 3)] == [4, 20, 117]
    assert len(enumerate_classes(1, 1)) == 2  # lone left vertex, or with one leaf


def test_canonical_masks_is_relabel_invariant():
    assert canonical_masks(2, (1, 3)) == canonical_masks(2, (2, 3))
    assert canonical_masks(3, (1, 6)) == canonical_masks(3, (4, 3))


def test_forms_match_generic_canonical_form():
    pats = small_patterns()
    forms = {}
    for p in pats:
        f = canonical_form(p.to_coloured())
        assert f not in forms
        forms[f] = p


def test_enumeration_is_complete_for_two_left():
    # every bipartite graph with 2 left vertices (so at most 6 right ones), no isolated right vertex
    found = set()
    for r in range(7):
        for masks in itertools.product((1, 2, 3), repeat=r):
            loads = [sum(m >> i & 1 for m in masks) for i in range(2)]
            if max(loads, default=0) <= 3:
                found.add(BipartitePattern.canonical(2, masks))
    assert found == set(enumerate_classes(2, 3))


def test_from_bipartite_graph():
    p = from_bipartite_graph(2, 1, [(0, 0), (1, 0)])
    assert p == BipartitePattern(2, (3,))
    with pytest.raises(ValueError):
        from_bipartite_graph(1, 2, [(0, 0)])


def test_components():
    p = BipartitePattern.canonical(3, (1, 1, 6))
    comps = sorted(p.components())
    assert comps == sorted([BipartitePattern(1, (1, 1)), BipartitePattern(2, (3,))])
    assert BipartitePattern(2, ()).components() == [BipartitePattern(1, ()), BipartitePattern(1, ())]


def test_shom_matches_brute_random_pairs():
    pats = small_patterns()
    rnd = random.Random(5)
    for _ in range(300):
        a, b = rnd.choice(pats), rnd.choice(pats)
        assert shom(a, b) == brute_shom(a.to_coloured(), b.to_coloured())


@pytest.mark.parametrize("l", [1, 2])
def test_shom_matches_brute_exhaustive(l):
    pats = [p for p in small_patterns(max_left=l, max_n=6)]
    for a, b in itertools.product(pats, repeat=2):
        assert shom(a, b) == brute_shom(a.to_coloured(), b.to_coloured())


def test_basis_rows_triangular():
    basis = bipartite_basis(2, 3)
    for i in range(len(basis)):
        row = basis.row(i)
        assert row[i] >= 1
        assert all(j >= i for j in row)
    # entries left of the diagonal, skipped by row(), are really zero
    for i, j in itertools.product(range(len(basis)), repeat=2):
        if j < i:
            assert shom(basis.patterns[i], basis.patterns[j]) == 0


def test_isomorphic_patterns_share_class():
    a = BipartitePattern.canonical(3, (1, 3, 6))
    b = BipartitePattern.canonical(3, (4, 6, 3))
    assert (a == b) == is_isomorphic(BipartitePattern(3, (1, 3, 6)).to_coloured(),
                                     BipartitePattern(3, (4, 6, 3)).to_coloured())
