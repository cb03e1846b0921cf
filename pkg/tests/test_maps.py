import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser_vr.combinatorics import Subset, enumerate_space, symdiff_distance
from kneser_vr.errors import InvalidInputError
from kneser_vr.maps import (
    ConcentrationMap,
    compose_chain,
    concentration,
    identity_map,
    induced_simplicial_map,
    removal_order_report,
    verify_all_atomic,
    verify_atomic_contraction,
    verify_chain_map,
    verify_contiguity,
    verify_lipschitz,
    verify_phi_m_m1,
    verify_phi_m_S_cases,
)


def test_apply_examples():
    phi = concentration(5, 4, 3)
    assert phi([1, 2, 5]) == Subset.of([1, 2, 3])
    assert phi([3, 4, 5]) == Subset.of([1, 3, 4])
    assert phi([1, 2, 4]) == Subset.of([1, 2, 4])
    with pytest.raises(InvalidInputError):
        phi([1, 2, 6])


def test_map_validation():
    with pytest.raises(InvalidInputError):
        ConcentrationMap(Subset.of([1, 2, 3]), Subset.of([1, 4]), 2)
    with pytest.raises(InvalidInputError):
        concentration(5, 2, 3)


def test_identity_on_target():
    phi = concentration(8, [1, 3, 5, 7], 2)
    for a in enumerate_space(2, [1, 3, 5, 7]):
        assert phi(a) == a


@pytest.mark.parametrize("m", [5, 6, 7])
def test_all_atomic_maps(m):
    assert verify_all_atomic(3, m)


def test_atomic_examples():
    assert verify_atomic_contraction(Subset.interval(5), Subset.interval(4), 3)
    assert verify_atomic_contraction(Subset.interval(7), Subset.interval(6), 3)
    with pytest.raises(InvalidInputError):
        verify_atomic_contraction(Subset.interval(7), Subset.interval(5), 3)


@pytest.mark.parametrize("m", [5, 6, 7])
def test_suffix_chains(m):
    for j in range(3, m + 1):
        assert compose_chain(m, 3, list(range(m, j, -1)))


def test_chain_examples():
    assert compose_chain(6, 3, [6, 5])
    assert compose_chain(6, 3, [3, 5]).passed
    assert compose_chain(6, 3, [])
    with pytest.raises(InvalidInputError):
        compose_chain(6, 3, [5, 5])


def test_removal_orders_all_agree():
    for rep in (removal_order_report(7, 3, [1, 2, 4]), removal_order_report(6, 2, [2, 5])):
        assert all(r["equal"] for r in rep)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 8).flatmap(lambda m: st.tuples(
    st.just(m), st.integers(2, 3), st.sets(st.integers(1, m), min_size=3, max_size=m))))
def test_lipschitz_property(case):
    m, n, target = case
    assert verify_lipschitz(concentration(m, Subset.of(target), n))


@pytest.mark.parametrize("m, t, n, r", [(5, 4, 2, 2), (7, 6, 3, 4), (7, 7, 3, 4)])
def test_induced_simplicial(m, t, n, r):
    smap, cert = induced_simplicial_map(concentration(m, t, n), r)
    assert cert


@pytest.mark.parametrize("p", [2, 3])
def test_chain_map_commutes(p):
    smap, _ = induced_simplicial_map(concentration(6, [1, 2, 4, 5], 3), 4)
    assert verify_chain_map(smap, [1, 2, 3, 4], p)


def test_degenerate_simplex_maps_to_zero():
    smap, _ = induced_simplicial_map(concentration(5, 4, 2), 2)
    src = smap.source
    a, b = src.ordinal([1, 5]), src.ordinal([1, 2])
    assert smap.vertex_map[a] == smap.vertex_map[b]
    assert smap.chain_image(tuple(sorted((a, b)))).is_zero()


def test_phi_m_S_isometry():
    res = verify_phi_m_S_cases(7, 6, range(1, 7), range(2, 8), 3)
    assert res and res.params["case"] == "isometry"


def test_phi_m_S_one_outside():
    res = verify_phi_m_S_cases(7, 6, range(1, 7), [1, 3, 4, 5, 6, 7], 3)
    assert res and res.details["R"] == [1, 3, 4, 5, 6] and res.details["image_betti"] == []


def test_phi_m_S_many_outside():
    res = verify_phi_m_S_cases(9, 6, range(1, 7), [1, 2, 3, 7, 8, 9], 3)
    assert res and res.details["case"] == "many-outside" and res.details["R"] == [1, 2, 3]


def test_phi_m_S_sweep():
    for s in itertools.combinations(range(2, 8), 4):
        S = (1,) + s
        for T in itertools.combinations(range(1, 8), 5):
            if T != S:
                assert verify_phi_m_S_cases(7, 5, S, T, 3)


def test_phi_m_S_preconditions():
    with pytest.raises(InvalidInputError):
        verify_phi_m_S_cases(7, 6, range(2, 8), range(1, 7), 3)
    with pytest.raises(InvalidInputError):
        verify_phi_m_S_cases(7, 6, range(1, 7), range(1, 7), 3)


@pytest.mark.parametrize("S", [(1, 2, 3, 4, 5, 6, 8), (1, 2, 3, 4, 5, 7, 8), (1, 3, 4, 5, 6, 7, 8)])
def test_phi_m_m1(S):
    res = verify_phi_m_m1(8, 7, S, 3)
    assert res and res.details["image_betti"] == res.details["target_betti"]


def test_phi_m_m1_preconditions():
    with pytest.raises(InvalidInputError):
        verify_phi_m_m1(8, 8, range(1, 9), 3)
    with pytest.raises(InvalidInputError):
        verify_phi_m_m1(8, 7, range(1, 8), 3)


@pytest.mark.parametrize("m, n, c, js", [(5, 2, 1, (2, 3, 4, 5)), (6, 3, 2, (3, 4, 5, 6)), (6, 3, 1, (3, 4, 5))])
def test_contiguity(m, n, c, js):
    for j in js:
        assert verify_contiguity(m, n, c, j)


def test_contiguity_preconditions():
    with pytest.raises(InvalidInputError):
        verify_contiguity(5, 2, 2, 3)


def test_result_json_roundtrip():
    res = verify_atomic_contraction(Subset.interval(5), Subset.interval(4), 3)
    doc = res.to_json()
    assert doc["passed"] and doc["lemma"] == "contraction" and doc["counterexample"] is None
    assert identity_map(4, 2)([1, 2]) == Subset.of([1, 2])
