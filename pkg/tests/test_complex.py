import io
import itertools
from math import comb

import numpy as np
import pytest

from kneser_vr.combinatorics import Subset
from kneser_vr.complex import (
    build_complex,
    convex_hull,
    enumerate_simplices,
    is_maximal_simplex,
    link,
    maximal_simplices,
    read_simplices,
    write_simplices,
)
from kneser_vr.designs import FANO_LINES
from kneser_vr.errors import InvalidInputError

# f-vector of Ind(KG(3, 1)), dimensions 0..14
KG31_F = [35, 525, 4445, 23555, 81942, 191170, 300855, 317730, 221865, 100296, 29295, 5950, 910, 105, 7]


def test_cross_polytope_adjacency(cross10):
    for i, a in enumerate(cross10.vertices):
        non = [j for j in range(len(cross10)) if j != i and not cross10.adjacent(i, j)]
        assert len(non) == 1
        assert cross10.vertices[non[0]] == Subset.interval(6) - a


def test_octahedron(octahedron):
    assert len(octahedron) == 6
    assert octahedron.count_simplices(2) == 8
    assert octahedron.dimension() == 2


def test_complete_at_diameter():
    K = build_complex(3, 7, 6)
    assert all(bin(x).count("1") == 34 for x in K.neighbors)


def test_adjacency_symmetric_irreflexive():
    K = build_complex(3, 7, 4)
    A = np.array([[K.adjacent(i, j) for j in range(len(K))] for i in range(len(K))])
    assert (A == A.T).all() and not A.diagonal().any()


def test_cross_polytope_face_counts(cross10):
    for d in range(10):
        assert cross10.count_simplices(d) == comb(10, d + 1) * 2 ** (d + 1)
    assert cross10.count_simplices(10) == 0


def test_kg31_f_vector(kg31):
    assert kg31.f_vector(15) == KG31_F + [0]
    assert kg31.dimension() == 14


def test_enumeration_lex_and_complete(octahedron):
    tri = list(enumerate_simplices(octahedron, 2))
    assert tri == sorted(tri) and len(tri) == 8
    assert len(list(enumerate_simplices(build_complex(3, 7, 4), 0))) == 35
    assert np.array_equal(np.array(tri), octahedron.simplices(2))


def test_thread_count_does_not_change_output(kg31):
    a = kg31.simplices(5, workers=1)
    b = kg31.simplices(5, workers=3)
    assert np.array_equal(a, b)


def test_scale_quantization():
    for r in (0, 2, 4):
        assert np.array_equal(build_complex(3, 7, r).adjacency, build_complex(3, 7, r + 1).adjacency)


def test_maximality_examples():
    K = build_complex(3, 7, 4)
    star = K.ordinals(a for a in K.vertices if 1 in a)
    assert is_maximal_simplex(K, star)
    five = K.ordinals(Subset.of(c) for c in itertools.combinations([1, 2, 3, 4, 5], 3))
    assert is_maximal_simplex(K, five)
    assert not is_maximal_simplex(K, (0,))
    with pytest.raises(InvalidInputError):
        is_maximal_simplex(K, (K.ordinal((1, 2, 3)), K.ordinal((4, 5, 6))))


def test_maximality_matches_brute_force():
    K = build_complex(2, 6, 2)
    for s in itertools.chain.from_iterable(enumerate_simplices(K, d) for d in range(4)):
        brute = not any(v not in s and all(K.adjacent(v, u) for u in s) for v in range(len(K)))
        assert is_maximal_simplex(K, s) == brute


def test_maximal_simplices_are_maximal():
    K = build_complex(2, 5, 2)
    facets = list(maximal_simplices(K))
    assert len(set(facets)) == len(facets)
    assert all(is_maximal_simplex(K, f) for f in facets)
    # every edge lies in some facet
    for e in enumerate_simplices(K, 1):
        assert any(set(e) <= set(f) for f in facets)


def test_convex_hull():
    K = build_complex(3, 7, 4)
    hull = convex_hull(K, K.ordinals(Subset.of(ln) for ln in FANO_LINES))
    assert hull.ground == Subset.interval(7) and len(hull) == 35
    assert len(convex_hull(K, (0,))) == 1
    with pytest.raises(InvalidInputError):
        convex_hull(K, ())


def test_link_of_cross_polytope(cross10):
    lk = link(cross10, 0)
    assert len(lk) == 18
    assert lk.count_simplices(8) == 2 ** 9


def test_link_of_complete_and_isolated():
    K = build_complex(2, 4, 4)
    assert len(link(K, 0)) == 5
    assert len(link(build_complex(2, 4, 0), 0)) == 0


def test_facet_roundtrip(cross10):
    buf = io.StringIO()
    count = write_simplices(cross10, 9, buf)
    assert count == 1024
    header, rows = read_simplices(io.StringIO(buf.getvalue()))
    assert header == {"n": 3, "m": 6, "r": 4, "dim": 9}
    assert rows == list(enumerate_simplices(cross10, 9))


def test_rejects_wrong_vertex_size():
    from kneser_vr.complex import FlagComplex

    with pytest.raises(InvalidInputError):
        FlagComplex([Subset.of([1, 2]), Subset.of([1, 2, 3])], 2, 2)
