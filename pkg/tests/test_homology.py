import itertools
import random

import pytest

from kneser_vr.combinatorics import Subset
from kneser_vr.complex import FlagComplex, build_complex, enumerate_simplices, kneser_complex
from kneser_vr.errors import InvalidInputError, ResourceLimitError
from kneser_vr.homology import (
    GF2,
    ChainVector,
    PrimeField,
    ResourceCaps,
    betti_numbers,
    boundary,
    chain_boundary,
    cycle_check,
    euler_characteristic,
    persistence_barcode,
    rank_profile,
)
from oracles import dense_betti, vr_simplices

GF3 = PrimeField(3)


def test_field_validation():
    with pytest.raises(InvalidInputError):
        PrimeField(4)
    f = PrimeField(7)
    assert all(f.normalize(a * f.inv(a)) == 1 for a in range(1, 7))


def test_boundary_examples():
    b = boundary((2, 5), GF3)
    assert b.entries == {(5,): 1, (2,): 2}
    assert len(boundary((1, 2, 3))) == 3
    assert boundary((4,)).dim == -1 and boundary((4,)).is_zero()
    with pytest.raises(InvalidInputError):
        boundary((3, 1))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_boundary_squared_zero(p):
    rng = random.Random(p)
    for _ in range(30):
        k = rng.randint(2, 7)
        s = tuple(sorted(rng.sample(range(20), k)))
        assert chain_boundary(boundary(s, p)).is_zero()


def test_cycle_check_examples(cross10):
    K = build_complex(2, 5, 2)
    tri = next(enumerate_simplices(K, 2))
    assert cycle_check(K, boundary(tri, GF3))
    edge = next(enumerate_simplices(K, 1))
    assert not cycle_check(K, ChainVector(1, {edge: 1}, 3))
    with pytest.raises(InvalidInputError):
        cycle_check(K, ChainVector(1, {(0, 999): 1}, 2))


def test_chain_arithmetic():
    a = ChainVector(1, {(0, 1): 1, (1, 2): 2}, 3)
    b = ChainVector(1, {(0, 1): 2}, 3)
    assert (a + b).entries == {(1, 2): 2}
    assert (a - a).is_zero()
    assert (-a).coefficient((1, 2)) == 1
    with pytest.raises(InvalidInputError):
        a + ChainVector(2, {}, 3)


def test_kg30():
    assert betti_numbers(kneser_complex(3, 0), 10) == [0] * 9 + [1, 0]


@pytest.mark.parametrize("k, b2", [(0, 1), (1, 4), (2, 10), (3, 20)])
def test_kg2k_wedge_of_spheres(k, b2):
    b = betti_numbers(kneser_complex(2, k), 4)
    assert b == [0, 0, b2, 0, 0]


@pytest.mark.parametrize("field", [GF2, GF3])
def test_kg31_full(kg31, field):
    expected = [0] * 15
    expected[6], expected[9] = 29, 7
    assert betti_numbers(kg31, 14, field) == expected


def test_kg31_rank_profile(kg31):
    ranks, counts = rank_profile(kg31, 0, 14)
    assert [ranks[d] for d in range(14, 0, -1)] == [7, 98, 812, 5138, 24157, 76132, 145733, 171997, 128829,
                                                   62341, 19601, 3954, 491, 34]
    assert ranks[0] == 1


def test_partial_query_matches(kg31):
    b = betti_numbers(kg31, 9, GF3, dims=[6, 9])
    assert b[6] == 29 and b[9] == 7 and b[0] is None


def test_thread_independent(kg31):
    assert betti_numbers(kg31, 9, dims=[6, 9], workers=1) == betti_numbers(kg31, 9, dims=[6, 9], workers=4)


def test_euler_characteristic(kg31):
    assert euler_characteristic(kg31) == 29 - 7
    assert euler_characteristic(kg31, reduced=False) == 23


def test_caps_refuse():
    with pytest.raises(ResourceLimitError) as exc:
        betti_numbers(kneser_complex(3, 1), 14, caps=ResourceCaps(max_simplices=1000))
    assert exc.value.cap == "max_simplices"
    with pytest.raises(ResourceLimitError) as exc:
        betti_numbers(kneser_complex(3, 1), 14, caps=ResourceCaps(memory_mb=1))
    assert exc.value.cap == "memory_mb"
    with pytest.raises(InvalidInputError):
        ResourceCaps(max_simplices=0)


def test_kg32_refused_by_default():
    with pytest.raises(ResourceLimitError):
        betti_numbers(kneser_complex(3, 2), 9, dims=[9])


def test_empty_and_point():
    K = FlagComplex([Subset.of([1, 2])], 2, 2)
    assert betti_numbers(K, 2) == [0, 0, 0]
    two = FlagComplex([Subset.of([1, 2]), Subset.of([3, 4])], 2, 2)
    assert betti_numbers(two, 1) == [1, 0]


def _random_instances(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([2, 3])
        m = rng.randint(n + 1, 6)
        size = rng.randint(n + 1, m)
        ground = sorted(rng.sample(range(1, m + 1), size))
        r = rng.choice(range(0, 2 * n + 1, 2))
        pts = [frozenset(c) for c in itertools.combinations(ground, n)]
        if sum(map(len, vr_simplices(pts, r, len(pts)).values())) <= 500:
            out.append((n, tuple(ground), r))
    return out


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n, ground, r", _random_instances(7, 25))
def test_matches_dense_oracle(n, ground, r, p):
    pts = [frozenset(v.elements()) for v in build_complex(n, Subset.of(ground), r).vertices]
    ref, total = dense_betti(pts, r, p)
    assert total <= 500
    K = build_complex(n, Subset.of(ground), r)
    assert betti_numbers(K, len(ref) - 1, p) == ref


@pytest.mark.parametrize("n, m", [(2, 5), (3, 6)])
def test_barcode_short_bars(n, m):
    bc = persistence_barcode(n, m, 10)
    assert 0 < bc.max_length() <= 2
    for rec in bc.to_records():
        assert rec["death"] is not None and rec["birth"] % 2 == 0


def test_barcode_values():
    bc = persistence_barcode(2, 5, 4)
    assert bc.intervals[0] == [(0, 2)] * 9
    assert bc.intervals[2] == [(2, 4)] * 4
    assert bc.alive_at(2, 2) == [(2, 4)] * 4


def test_barcode_matches_betti_at_each_scale():
    bc = persistence_barcode(2, 5, 3)
    for r in (0, 2, 4):
        b = betti_numbers(build_complex(2, 5, r), 3)
        assert [len(bc.alive_at(q, r)) for q in range(4)] == b


def test_barcode_connected_at_scale_four():
    bc = persistence_barcode(3, 7, 0)
    assert bc.alive_at(0, 4) == []
