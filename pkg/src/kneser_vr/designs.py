"""Finite projective planes, blocking sets and line-set maximality."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, TextIO

from .combinatorics import CAPACITY, Subset
from .complex import build_complex, is_maximal_simplex
from .errors import InvalidInputError, UnsupportedOrderError
from .homology import is_prime

FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


@dataclass(frozen=True)
class ProjectivePlane:
    """Points ``1..q²+q+1`` and lines as subsets of those points."""

    order: int
    lines: tuple[Subset, ...]

    def __post_init__(self):
        problems = axiom_violations(self.order, self.lines)
        if problems:
            raise InvalidInputError("not a projective plane: " + problems[0])

    @property
    def num_points(self) -> int:
        q = self.order
        return q * q + q + 1

    @property
    def points(self) -> range:
        return range(1, self.num_points + 1)

    def lines_through(self, point: int) -> list[Subset]:
        return [ln for ln in self.lines if point in ln]

    def relabel(self, perm: dict[int, int]) -> "ProjectivePlane":
        return ProjectivePlane(self.order, tuple(Subset.of(perm[x] for x in ln) for ln in self.lines))


def axiom_violations(q: int, lines: Iterable[Subset]) -> list[str]:
    """Every failed incidence axiom, as text (empty list when all hold)."""
    lines = list(lines)
    v = q * q + q + 1
    out = []
    if len(lines) != v:
        out.append(f"expected {v} lines, got {len(lines)}")
    if len(set(lines)) != len(lines):
        out.append("repeated line")
    for ln in lines:
        if ln.size != q + 1:
            out.append(f"line {ln!r} has {ln.size} points, expected {q + 1}")
        if ln.max_element > v:
            out.append(f"line {ln!r} uses a point outside [1, {v}]")
    for p in range(1, v + 1):
        deg = sum(1 for ln in lines if p in ln)
        if deg != q + 1:
            out.append(f"point {p} lies on {deg} lines, expected {q + 1}")
    for a, b in itertools.combinations(lines, 2):
        if (a & b).size != 1:
            out.append(f"lines {a!r} and {b!r} meet in {(a & b).size} points")
    for p1, p2 in itertools.combinations(range(1, v + 1), 2):
        through = sum(1 for ln in lines if p1 in ln and p2 in ln)
        if through != 1:
            out.append(f"points {p1},{p2} lie on {through} common lines")
    return out


def fano_plane() -> ProjectivePlane:
    return ProjectivePlane(2, tuple(Subset.of(ln) for ln in FANO_LINES))


def _normalized_vectors(q: int) -> list[tuple[int, int, int]]:
    # representatives of the 1-dim subspaces of GF(q)^3: first nonzero coordinate is 1
    vecs = []
    for v in itertools.product(range(q), repeat=3):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            vecs.append(v)
    return sorted(vecs)


def projective_plane(q: int) -> ProjectivePlane:
    """PG(2, q) for prime ``q``; points are numbered in lexicographic order of their representatives."""
    if not is_prime(q):
        raise UnsupportedOrderError(f"order {q} is not prime; only prime orders are constructed")
    if q * q + q + 1 > CAPACITY:
        raise UnsupportedOrderError(f"order {q} needs {q * q + q + 1} points, capacity is {CAPACITY}")
    pts = _normalized_vectors(q)
    label = {p: i + 1 for i, p in enumerate(pts)}
    lines = []
    for normal in pts:
        on = [label[p] for p in pts if sum(a * b for a, b in zip(p, normal)) % q == 0]
        lines.append(Subset.of(on))
    lines.sort(key=lambda s: s.elements())
    return ProjectivePlane(q, tuple(lines))


def isomorphic(a: ProjectivePlane, b: ProjectivePlane) -> dict[int, int] | None:
    """A point relabelling carrying ``a``'s lines onto ``b``'s, by exhaustive search."""
    if a.order != b.order:
        return None
    target = set(b.lines)
    pts = list(a.points)
    for perm in itertools.permutations(pts):
        mapping = dict(zip(pts, perm))
        if all(Subset.of(mapping[x] for x in ln) in target for ln in a.lines):
            return mapping
    return None


def _contains_line(chosen: int, lines: list[int]) -> bool:
    return any(ln & chosen == ln for ln in lines)


def min_blocking_set_size(plane: ProjectivePlane, max_size: int) -> int | None:
    """Smallest blocking set of size ``<= max_size``, or ``None``.

    Depth-first search that always branches on the first line not yet met;
    a point set containing a line is abandoned since supersets keep it.
    """
    if max_size > plane.num_points:
        raise InvalidInputError("max_size exceeds the number of points")
    lines = [ln.bits for ln in plane.lines]
    best = [None]

    def search(chosen: int, size: int, limit: int) -> bool:
        if _contains_line(chosen, lines):
            return False
        unmet = next((ln for ln in lines if ln & chosen == 0), None)
        if unmet is None:
            return True
        if size == limit:
            return False
        b = unmet
        while b:
            low = b & -b
            b ^= low
            if search(chosen | low, size + 1, limit):
                return True
        return False

    for limit in range(1, max_size + 1):
        if search(0, 0, limit):
            best[0] = limit
            break
    return best[0]


def line_meeting_sets(plane: ProjectivePlane, size: int) -> list[Subset]:
    """All ``size``-subsets of points that meet every line (brute force)."""
    out = []
    for combo in itertools.combinations(plane.points, size):
        s = Subset.of(combo)
        if all((s & ln).size > 0 for ln in plane.lines):
            out.append(s)
    return out


def bruen_bound(q: int) -> int:
    """Least integer ``>= q + √q + 1``."""
    r = isqrt(q)
    return q + 1 + (r if r * r == q else r + 1)


def verify_max_pp(q: int, m: int) -> bool:
    """Lines of PG(2, q) form a maximal simplex of ``VR(F_{q+1}^[m]; 2q)``."""
    plane = fano_plane() if q == 2 else projective_plane(q)
    if m < plane.num_points:
        raise InvalidInputError(f"need m >= {plane.num_points}")
    K = build_complex(q + 1, m, 2 * q)
    sigma = K.ordinals(plane.lines)
    if not K.is_simplex(sigma):
        return False
    return is_maximal_simplex(K, sigma)


def write_plane(plane: ProjectivePlane, out: TextIO) -> None:
    """Lines in the facet-list text format, points relabelled 0-based."""
    q = plane.order
    out.write(f"# n={q + 1} m={plane.num_points} r={2 * q} dim={q}\n")
    for ln in plane.lines:
        out.write(" ".join(str(x - 1) for x in ln.elements()) + "\n")
