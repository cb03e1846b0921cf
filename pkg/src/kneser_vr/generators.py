"""Cross-polytopal subcomplexes, their fundamental cycles, and rank certificates.

A certificate for ``H_p(VR(F_n^[m]; 2(n-1)))`` with ``p = C(2n, n)/2 - 1``
attaches to every ``2n``-subset ``S_i`` of ``[m]`` a maximal facet
``σ_i`` and a cross-polytopal cycle ``α_i`` supported in ``F_n^{S_i}``.  If
``σ_i`` appears in ``α_j`` exactly when ``i == j`` the classes are
independent, since a maximal simplex keeps its coefficient across every
representative of a class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .combinatorics import Subset, as_subset
from .complex import FlagComplex, Simplex, build_complex, is_maximal_simplex
from .designs import FANO_LINES, fano_plane, projective_plane
from .errors import CertificateError, InvalidInputError, ResourceLimitError
from .homology import GF2, ChainVector, as_field, cycle_check


@dataclass(frozen=True)
class CrossPolytopeStructure:
    """Antipodal pairs ``(a, b)``, ``a < b``, listed by ``a``."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def d(self) -> int:
        return len(self.pairs)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for pr in self.pairs for v in pr))

    def partner(self, v: int) -> int:
        for a, b in self.pairs:
            if v == a:
                return b
            if v == b:
                return a
        raise KeyError(v)


def is_cross_polytopal(K: FlagComplex, verts: Sequence[int]) -> CrossPolytopeStructure | None:
    """Antipodal pairing of ``verts`` if non-adjacency among them is a perfect matching."""
    verts = sorted(set(verts))
    if not verts or len(verts) % 2:
        return None
    mask = 0
    for v in verts:
        mask |= 1 << v
    pairs = []
    for v in verts:
        non = mask & ~K.neighbors[v] & ~(1 << v)
        if non.bit_count() != 1:
            return None
        w = non.bit_length() - 1
        if v < w:
            pairs.append((v, w))
    if 2 * len(pairs) != len(verts):
        return None
    return CrossPolytopeStructure(tuple(pairs))


def _perm_sign(seq: Sequence[int]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def cross_polytope_coefficient(cp: CrossPolytopeStructure, simplex: Sequence[int]) -> int:
    """Integer coefficient (``±1`` or ``0``) of a sorted simplex in the fundamental cycle.

    The cycle is the join of the 0-cycles ``a_i - b_i``: choosing ``x_i`` from
    pair ``i`` contributes ``Π ε_i`` times the sign of the permutation sorting
    ``(x_1, ..., x_d)``, with ``ε = +1`` for the first partner.
    """
    s = set(simplex)
    if len(s) != cp.d:
        return 0
    chosen = []
    eps = 1
    for a, b in cp.pairs:
        if a in s and b not in s:
            chosen.append(a)
        elif b in s and a not in s:
            chosen.append(b)
            eps = -eps
        else:
            return 0
    return eps * _perm_sign(chosen)


def cross_polytopal_cycle(cp: CrossPolytopeStructure, field=GF2, max_terms: int = 1 << 20) -> ChainVector:
    """The ``(d-1)``-cycle supported on all ``2^d`` antipode-free facets."""
    f = as_field(field)
    if 1 << cp.d > max_terms:
        raise ResourceLimitError("max_terms", 1 << cp.d, max_terms, f"cross-polytope with d={cp.d}")
    entries = {}
    for choice in itertools.product((0, 1), repeat=cp.d):
        chosen = [pr[c] for pr, c in zip(cp.pairs, choice)]
        eps = -1 if sum(choice) % 2 else 1
        entries[tuple(sorted(chosen))] = eps * _perm_sign(chosen)
    return ChainVector(cp.d - 1, entries, f.p)


# ---------------------------------------------------------------------------
# Fano extension


def fano_psi_extension(S, m: int = 7) -> tuple[tuple[Subset, ...], dict[Subset, Subset]]:
    """Fano lines and ``ψ_S``: each line goes to the smallest 3-subset of ``S ∖ A``."""
    S = as_subset(S)
    if m < 7 or S.size != 6 or S.max_element > m:
        raise InvalidInputError("need m >= 7 and a 6-subset S of [m]")
    sigma = tuple(Subset.of(ln) for ln in FANO_LINES)
    psi = {}
    for a in sigma:
        rest = S - a
        if rest.size < 3:
            raise InvalidInputError(f"|S ∖ {a!r}| < 3")
        psi[a] = rest.smallest(3)
    return sigma, psi


@dataclass
class FanoExtension:
    ambient: FlagComplex
    sigma: Simplex
    psi: dict[int, int]
    complex: FlagComplex
    structure: CrossPolytopeStructure | None


def fano_extension_complex(S, m: int = 7) -> FanoExtension:
    """The 14-vertex complex ``VR(σ ∪ ψ_S(σ); 4)`` inside ``VR(F_3^[m]; 4)``."""
    lines, psi = fano_psi_extension(S, m)
    K = build_complex(3, m, 4)
    sigma = K.ordinals(lines)
    psi_ord = {K.ordinal(a): K.ordinal(b) for a, b in psi.items()}
    verts = sorted(set(sigma) | set(psi_ord.values()))
    return FanoExtension(K, sigma, psi_ord, K.induced(verts), is_cross_polytopal(K, verts))


def explore_pp_extension(q: int, S=None) -> dict:
    """Try the ``ψ_S`` extension on the lines of PG(2, q); report where it breaks.

    Lines are ``(q+1)``-subsets of ``[q²+q+1]`` at scale ``2q``; ``S`` defaults
    to ``[2(q+1)]``.  No outcome is presumed.
    """
    plane = fano_plane() if q == 2 else projective_plane(q)
    n = q + 1
    m = plane.num_points
    S = Subset.interval(2 * n) if S is None else as_subset(S)
    report: dict = {"q": q, "n": n, "m": m, "S": S.to_list(), "undefined": [], "bad_pairs": [], "cross_polytopal": False}
    psi = {}
    for a in plane.lines:
        rest = S - a
        if rest.size < n:
            report["undefined"].append(a.to_list())
        else:
            psi[a] = rest.smallest(n)
    if report["undefined"]:
        return report
    K = build_complex(n, m, 2 * q)
    verts = sorted({K.ordinal(a) for a in plane.lines} | {K.ordinal(b) for b in psi.values()})
    report["num_vertices"] = len(verts)
    for u, v in itertools.combinations(verts, 2):
        A, B = K.vertices[u], K.vertices[v]
        antipodal = psi.get(A) == B or psi.get(B) == A
        if antipodal == K.adjacent(u, v):
            report["bad_pairs"].append({"a": A.to_list(), "b": B.to_list(), "antipodal": antipodal, "distance": int(K.distances[u, v])})
    report["cross_polytopal"] = not report["bad_pairs"] and len(verts) == 2 * len(plane.lines)
    return report


# ---------------------------------------------------------------------------
# the antipode-free maximal facet and rank certificates


def max_2n_facet(n: int, S) -> tuple[Subset, ...]:
    """All ``n``-subsets of ``[2n-1]`` with two members swapped for their complements, mapped onto ``S``."""
    S = as_subset(S)
    if n < 3:
        raise InvalidInputError("construction requires n >= 3")
    if S.size != 2 * n:
        raise InvalidInputError(f"S must have {2 * n} elements")
    first = tuple(range(1, n + 1))
    second = (1,) + tuple(range(n + 1, 2 * n))
    swap = {first: tuple(range(n + 1, 2 * n + 1)), second: tuple(range(2, n + 1)) + (2 * n,)}
    elems = S.elements()
    out = []
    for c in itertools.combinations(range(1, 2 * n), n):
        c = swap.get(c, c)
        out.append(Subset.of(elems[i - 1] for i in c))
    return tuple(sorted(out))


@dataclass
class CertificateEntry:
    subset: Subset
    facet: Simplex
    facet_maximal: bool
    hull_ok: bool
    cross_polytopal: bool
    cycle_terms: int
    cycle_ok: bool | None  # None: cycle not materialised, certified by structure
    members: tuple[Subset, ...] = ()
    pairing_row: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.facet_maximal and self.hull_ok and self.cross_polytopal and self.cycle_ok is not False


@dataclass
class GeneratorCertificate:
    n: int
    m: int
    p: int
    dim: int
    entries: list[CertificateEntry]
    cycles: list[ChainVector | None]

    @property
    def subsets(self) -> list[Subset]:
        return [e.subset for e in self.entries]

    @property
    def facets(self) -> list[Simplex]:
        return [e.facet for e in self.entries]

    @property
    def pairing(self) -> list[list[int]]:
        return [e.pairing_row for e in self.entries]

    @property
    def rank(self) -> int:
        return len(self.entries)

    def pairing_is_identity(self) -> bool:
        return all(row[j] == (1 if i == j else 0) for i, row in enumerate(self.pairing) for j in range(len(row)))

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries) and self.pairing_is_identity()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "field": self.p,
            "dimension": self.dim,
            "rank": self.rank,
            "passed": self.passed,
            "entries": [
                {
                    "subset": e.subset.to_list(),
                    "facet": [a.to_list() for a in e.members],
                    "cycle_support": e.cycle_terms,
                    "cycle_check": "explicit" if e.cycle_ok is not None else "structural",
                    "pairing_row": e.pairing_row,
                    "passed": e.passed,
                }
                for e in self.entries
            ],
        }


def build_certificate(n: int, m: int, field=GF2, explicit_limit: int = 1 << 16, strict: bool = True) -> GeneratorCertificate:
    """Certify ``C(m, 2n)`` independent classes in ``H_p(VR(F_n^[m]; 2(n-1)))``.

    Cycles with at most ``explicit_limit`` terms are built and checked with
    ``∂α = 0``; larger ones are certified through the cross-polytopal
    structure of their hull, which determines the cycle completely.
    """
    f = as_field(field)
    if n < 3 or m < 2 * n:
        raise InvalidInputError("need n >= 3 and m >= 2n")
    K = build_complex(n, m, 2 * (n - 1))
    d = comb(2 * n, n) // 2
    entries: list[CertificateEntry] = []
    structures: list[CrossPolytopeStructure | None] = []
    cycles: list[ChainVector | None] = []
    norms: list[int] = []
    for combo in itertools.combinations(range(1, m + 1), 2 * n):
        S = Subset.of(combo)
        members = max_2n_facet(n, S)
        facet = K.ordinals(members)
        maximal = is_maximal_simplex(K, facet)
        union = Subset(0)
        for a in members:
            union = union | a
        hull_verts = [K.ordinal(a) for a in _n_subsets(S, n)]
        cp = is_cross_polytopal(K, hull_verts)
        coef = cross_polytope_coefficient(cp, facet) if cp is not None else 0
        norm = coef % f.p  # ±1, its own inverse
        cycle = None
        cycle_ok = None
        if cp is not None and (1 << cp.d) <= explicit_limit:
            cycle = cross_polytopal_cycle(cp, f, max_terms=explicit_limit).scale(norm)
            cycle_ok = cycle_check(K, cycle)
        entry = CertificateEntry(
            subset=S,
            facet=facet,
            facet_maximal=maximal,
            hull_ok=union == S,
            cross_polytopal=cp is not None and cp.d == d and coef != 0,
            cycle_terms=(1 << cp.d) if cp is not None else 0,
            cycle_ok=cycle_ok,
            members=members,
        )
        entries.append(entry)
        structures.append(cp)
        cycles.append(cycle)
        norms.append(norm)
    for i, e in enumerate(entries):
        row = []
        for j, cp in enumerate(structures):
            if cycles[j] is not None:
                row.append(cycles[j].coefficient(e.facet))
            elif cp is not None:
                row.append(cross_polytope_coefficient(cp, e.facet) * norms[j] % f.p)
            else:
                row.append(0)
        e.pairing_row = row
    cert = GeneratorCertificate(n, m, f.p, d - 1, entries, cycles)
    if strict and not cert.passed:
        for i, e in enumerate(entries):
            if not e.passed:
                raise CertificateError(f"entry {i} (S={e.subset!r}) failed", index=(i, i))
            for j, v in enumerate(e.pairing_row):
                if v != (1 if i == j else 0):
                    raise CertificateError(f"pairing[{i}][{j}] = {v}", index=(i, j))
    return cert


def _n_subsets(S: Subset, n: int) -> list[Subset]:
    return [Subset.of(c) for c in itertools.combinations(S.elements(), n)]
