import io
import itertools

import pytest

from kneser_vr.combinatorics import Subset
from kneser_vr.designs import (
    FANO_LINES,
    ProjectivePlane,
    axiom_violations,
    bruen_bound,
    fano_plane,
    isomorphic,
    line_meeting_sets,
    min_blocking_set_size,
    projective_plane,
    verify_max_pp,
    write_plane,
)
from kneser_vr.errors import InvalidInputError, UnsupportedOrderError


def test_fano_lines():
    f = fano_plane()
    assert [ln.to_list() for ln in f.lines] == [list(ln) for ln in FANO_LINES]
    assert len(f.lines) == 7
    assert all((a & b).size == 1 for a, b in itertools.combinations(f.lines, 2))
    assert axiom_violations(2, f.lines) == []


def test_plane_constructor_rejects_bad_lines():
    lines = [Subset.of(ln) for ln in FANO_LINES]
    lines[0] = Subset.of([1, 2, 4])
    with pytest.raises(InvalidInputError):
        ProjectivePlane(2, tuple(lines))


def test_order_two_is_fano():
    assert isomorphic(projective_plane(2), fano_plane()) is not None


@pytest.mark.parametrize("q", [3, 5, 7])
def test_prime_planes(q):
    P = projective_plane(q)
    v = q * q + q + 1
    assert len(P.lines) == v and all(ln.size == q + 1 for ln in P.lines)
    assert all(len(P.lines_through(x)) == q + 1 for x in P.points)


@pytest.mark.parametrize("q", [4, 6, 9, 11])
def test_unsupported_orders(q):
    with pytest.raises(UnsupportedOrderError):
        projective_plane(q)


def test_projective_plane_deterministic():
    assert projective_plane(3).lines == projective_plane(3).lines


def test_fano_has_no_blocking_set():
    assert min_blocking_set_size(fano_plane(), 7) is None


def test_fano_meeting_triples_are_lines():
    meeting = line_meeting_sets(fano_plane(), 3)
    assert sorted(meeting) == sorted(fano_plane().lines)


def test_order_three_blocking_sets():
    P = projective_plane(3)
    assert min_blocking_set_size(P, 5) is None
    assert min_blocking_set_size(P, 6) == 6 >= bruen_bound(3)


def test_blocking_search_agrees_with_brute_force():
    P = projective_plane(3)
    for size in range(1, 7):
        brute = [s for s in line_meeting_sets(P, size) if not any(ln.issubset(s) for ln in P.lines)]
        assert bool(brute) == (size >= 6)


def test_bruen_bound():
    assert [bruen_bound(q) for q in (2, 3, 4, 5, 9)] == [5, 6, 7, 9, 13]


@pytest.mark.parametrize("q, m", [(2, 7), (2, 8), (2, 9), (3, 13)])
def test_max_pp(q, m):
    assert verify_max_pp(q, m)


def test_max_pp_needs_room():
    with pytest.raises(InvalidInputError):
        verify_max_pp(2, 6)


def test_plane_export():
    buf = io.StringIO()
    write_plane(fano_plane(), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "# n=3 m=7 r=4 dim=2"
    assert lines[1] == "0 1 2" and len(lines) == 8
