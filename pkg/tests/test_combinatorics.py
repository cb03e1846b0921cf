import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser_vr.combinatorics import (
    CAPACITY,
    Subset,
    binomial_table,
    enumerate_space,
    intersects_threshold,
    kneser_adjacent,
    kneser_space,
    symdiff_distance,
)
from kneser_vr.errors import InvalidInputError


def nsubset(n, m):
    return st.sets(st.integers(1, m), min_size=n, max_size=n).map(Subset.of)


@pytest.mark.parametrize(
    "a, b, d",
    [((1, 2, 3), (1, 2, 3), 0), ((1, 2, 3), (4, 5, 6), 6), ((1, 2, 3), (1, 4, 5), 4)],
)
def test_symdiff_examples(a, b, d):
    assert symdiff_distance(a, b) == d


def test_symdiff_size_mismatch():
    with pytest.raises(InvalidInputError):
        symdiff_distance((1, 2), (1, 2, 3))


def test_threshold_examples():
    assert intersects_threshold((1, 2, 3), (3, 4, 5), 2)
    assert not intersects_threshold((1, 2, 3), (4, 5, 6), 2)
    with pytest.raises(InvalidInputError):
        intersects_threshold((1, 2, 3), (4, 5, 6), 0)


def test_threshold_agrees_with_distance_exhaustive():
    pts = enumerate_space(3, 7).vertices
    for a, b in itertools.combinations(pts, 2):
        for c in (1, 2, 3):
            assert intersects_threshold(a, b, c) == (symdiff_distance(a, b) <= 2 * c)


@pytest.mark.parametrize("n, m, size", [(3, 6, 20), (3, 7, 35), (2, 4, 6)])
def test_space_sizes(n, m, size):
    space = enumerate_space(n, m)
    assert len(space) == size == comb(m, n)
    assert all(space.ordinal(v) == i for i, v in enumerate(space))


def test_space_is_colex_sorted():
    verts = enumerate_space(3, 7).vertices
    keys = [tuple(reversed(v.elements())) for v in verts]
    assert keys == sorted(keys)
    assert [v.bits for v in verts] == sorted(v.bits for v in verts)


def test_space_rejects_small_ground():
    with pytest.raises(InvalidInputError):
        enumerate_space(4, 3)


def test_space_on_arbitrary_ground():
    space = enumerate_space(2, Subset.of([2, 5, 9]))
    assert [v.to_list() for v in space] == [[2, 5], [2, 9], [5, 9]]
    assert space.m == 9


def test_kneser_adjacency():
    assert kneser_adjacent((1, 2), (3, 4))
    assert not kneser_adjacent((1, 2), (2, 3))
    pts = kneser_space(3, 1).vertices
    for a in pts:
        assert sum(kneser_adjacent(a, b) for b in pts) == comb(4, 3)


def test_subset_basics():
    s = Subset.of([5, 1, 3])
    assert s.elements() == (1, 3, 5) and s.size == 3 and s.max_element == 5
    assert repr(s) == "{1,3,5}"
    assert (s - Subset.of([3])).to_list() == [1, 5]
    assert Subset.of([2, 4, 6, 8]).smallest(2).to_list() == [2, 4]
    assert Subset.interval(4).to_list() == [1, 2, 3, 4]
    assert 3 in s and 2 not in s


def test_capacity_enforced():
    Subset.of([CAPACITY])
    with pytest.raises(InvalidInputError):
        Subset.of([CAPACITY + 1])
    with pytest.raises(InvalidInputError):
        Subset.interval(CAPACITY + 1)


def test_binomial_table():
    t = binomial_table(10, 4)
    assert t[10, 3] == 120 and t[3, 4] == 0
    with pytest.raises(OverflowError):
        binomial_table(70, 35)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(nsubset(n, 8), nsubset(n, 8), nsubset(n, 8))))
def test_metric_axioms(abc):
    a, b, c = abc
    dab, dbc, dac = symdiff_distance(a, b), symdiff_distance(b, c), symdiff_distance(a, c)
    assert (dab == 0) == (a == b)
    assert dab == symdiff_distance(b, a)
    assert dac <= dab + dbc
    assert dab % 2 == 0 and dab <= 2 * a.size


def test_pairwise_kernel_matches_python():
    space = enumerate_space(3, 8)
    d = space.distances
    for i, j in itertools.combinations(range(len(space)), 2):
        assert d[i, j] == symdiff_distance(space.vertices[i], space.vertices[j])
    assert np.all(np.diag(d) == 0)
