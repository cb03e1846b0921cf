"""Concentration maps between n-subset spaces and the checks built on them.

``φ_S^{S'}`` sends ``A`` to ``(A ∩ S)`` plus the ``|A ∖ S|`` smallest
elements of ``S ∖ A``.  Homotopy statements about images are checked through
the testable consequence: equal reduced Betti numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .combinatorics import Subset, as_subset, enumerate_space, symdiff_distance
from .complex import FlagComplex, build_complex, enumerate_simplices, maximal_simplices
from .errors import InvalidInputError
from .homology import GF2, ChainVector, as_field, betti_numbers, boundary, chain_boundary


@dataclass(frozen=True)
class ConcentrationMap:
    source: Subset
    target: Subset
    n: int

    def __post_init__(self):
        object.__setattr__(self, "source", as_subset(self.source))
        object.__setattr__(self, "target", as_subset(self.target))
        if not self.target.issubset(self.source):
            raise InvalidInputError("target must be a subset of source")
        if self.target.size < self.n or self.n < 1:
            raise InvalidInputError(f"target needs at least n={self.n} elements")

    @property
    def atomic(self) -> bool:
        return (self.source - self.target).size == 1

    def apply(self, a) -> Subset:
        a = as_subset(a)
        if a.size != self.n:
            raise InvalidInputError(f"{a!r} is not an {self.n}-subset")
        if not a.issubset(self.source):
            raise InvalidInputError(f"{a!r} is not contained in {self.source!r}")
        kept = a & self.target
        moved = a.size - kept.size
        if moved == 0:
            return a
        return kept | (self.target - a).smallest(moved)

    __call__ = apply


def concentration(m: int, target, n: int) -> ConcentrationMap:
    """``φ_S^{[m]}``; an int ``target`` means ``[target]``."""
    t = Subset.interval(target) if isinstance(target, int) else as_subset(target)
    return ConcentrationMap(Subset.interval(m), t, n)


def identity_map(ground, n: int) -> ConcentrationMap:
    g = Subset.interval(ground) if isinstance(ground, int) else as_subset(ground)
    return ConcentrationMap(g, g, n)


@dataclass
class VerificationResult:
    passed: bool
    lemma: str
    params: dict
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "params": self.params,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def verify_atomic_contraction(source, target, n: int) -> VerificationResult:
    """Exhaustive check that an atomic map moves points by 0 or 2 and shrinks distances by 0 or 2."""
    source, target = as_subset(source), as_subset(target)
    if not target.issubset(source) or (source - target).size != 1:
        raise InvalidInputError("atomic maps remove exactly one element")
    phi = ConcentrationMap(source, target, n)
    params = {"source": source.to_list(), "target": target.to_list(), "n": n}
    pts = enumerate_space(n, source).vertices
    img = [phi(a) for a in pts]
    for a, fa in zip(pts, img):
        if symdiff_distance(a, fa) not in (0, 2):
            return VerificationResult(False, "contraction", params, {"A": a.to_list(), "image": fa.to_list()})
    for i, j in itertools.combinations(range(len(pts)), 2):
        delta = symdiff_distance(img[i], img[j]) - symdiff_distance(pts[i], pts[j])
        if delta not in (0, -2):
            return VerificationResult(
                False, "contraction", params, {"A": pts[i].to_list(), "B": pts[j].to_list(), "delta": delta}
            )
    return VerificationResult(True, "contraction", params, details={"vertices": len(pts)})


def verify_all_atomic(n: int, m: int) -> VerificationResult:
    """Every atomic map ``φ_S^{S'}`` with ``S' ⊆ [m]`` and ``|S| >= n``."""
    checked = 0
    for size in range(n + 1, m + 1):
        for src in itertools.combinations(range(1, m + 1), size):
            source = Subset.of(src)
            for x in src:
                res = verify_atomic_contraction(source, source - Subset.of([x]), n)
                checked += 1
                if not res:
                    res.params = {"n": n, "m": m, **res.params}
                    return res
    return VerificationResult(True, "contraction", {"n": n, "m": m}, details={"maps": checked})


def compose_chain(m: int, n: int, order: Sequence[int]) -> VerificationResult:
    """Compare ``φ_S^{[m]}`` with the composite of atomic maps removing ``order`` one at a time."""
    ground = Subset.interval(m)
    order = [int(x) for x in order]
    if len(set(order)) != len(order) or any(not 1 <= x <= m for x in order):
        raise InvalidInputError("removal order must list distinct elements of [m]")
    target = ground - Subset.of(order) if order else ground
    if target.size < n:
        raise InvalidInputError("too many elements removed")
    steps = []
    cur = ground
    for x in order:
        nxt = cur - Subset.of([x])
        steps.append(ConcentrationMap(cur, nxt, n))
        cur = nxt
    direct = ConcentrationMap(ground, target, n)
    params = {"m": m, "n": n, "order": order, "target": target.to_list()}
    for a in enumerate_space(n, m).vertices:
        b = a
        for step in steps:
            b = step(b)
        if b != direct(a):
            return VerificationResult(
                False, "decomp", params, {"A": a.to_list(), "composite": b.to_list(), "direct": direct(a).to_list()}
            )
    return VerificationResult(True, "decomp", params)


def removal_order_report(m: int, n: int, target) -> list[dict]:
    """``compose_chain`` for every order of removing ``[m] ∖ target``."""
    rest = (Subset.interval(m) - as_subset(target)).elements()
    out = []
    for order in itertools.permutations(rest):
        res = compose_chain(m, n, order)
        out.append({"order": list(order), "equal": res.passed, "counterexample": res.counterexample})
    return out


def verify_lipschitz(phi: ConcentrationMap) -> VerificationResult:
    pts = enumerate_space(phi.n, phi.source).vertices
    img = [phi(a) for a in pts]
    params = {"source": phi.source.to_list(), "target": phi.target.to_list(), "n": phi.n}
    for i, j in itertools.combinations(range(len(pts)), 2):
        if symdiff_distance(img[i], img[j]) > symdiff_distance(pts[i], pts[j]):
            return VerificationResult(False, "lipschitz", params, {"A": pts[i].to_list(), "B": pts[j].to_list()})
    return VerificationResult(True, "lipschitz", params)


# ---------------------------------------------------------------------------
# simplicial and chain maps


@dataclass
class SimplicialMap:
    """Vertex map between two flag complexes, as ordinals."""

    source: FlagComplex
    target: FlagComplex
    vertex_map: tuple[int, ...]

    def image(self, simplex: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def chain_image(self, simplex: Sequence[int], field=GF2) -> ChainVector:
        """``φ#`` on one oriented simplex; collapsed simplices go to zero."""
        f = as_field(field)
        dim = len(simplex) - 1
        imgs = [self.vertex_map[v] for v in simplex]
        if len(set(imgs)) < len(imgs):
            return ChainVector(dim, {}, f.p)
        inv = sum(1 for i in range(len(imgs)) for j in range(i + 1, len(imgs)) if imgs[i] > imgs[j])
        return ChainVector(dim, {tuple(sorted(imgs)): -1 if inv % 2 else 1}, f.p)

    def chain_map(self, z: ChainVector) -> ChainVector:
        out = ChainVector(z.dim, {}, z.p)
        for s, c in z.entries.items():
            out = out + self.chain_image(s, z.p).scale(c)
        return out


def induced_simplicial_map(phi: ConcentrationMap, r: int) -> tuple[SimplicialMap, VerificationResult]:
    """The vertex map ``VR(F_n^{S'}; r) → VR(F_n^S; r)`` and an exhaustive edge certificate."""
    src = build_complex(phi.n, phi.source, r)
    tgt = build_complex(phi.n, phi.target, r)
    vmap = tuple(tgt.ordinal(phi(a)) for a in src.vertices)
    smap = SimplicialMap(src, tgt, vmap)
    params = {"source": phi.source.to_list(), "target": phi.target.to_list(), "n": phi.n, "r": r}
    for u in range(len(src)):
        nb = src.neighbors[u] >> (u + 1)
        v = u + 1
        while nb:
            if nb & 1:
                a, b = vmap[u], vmap[v]
                if a != b and not tgt.adjacent(a, b):
                    return smap, VerificationResult(
                        False, "simplicial", params, {"A": src.vertices[u].to_list(), "B": src.vertices[v].to_list()}
                    )
            nb >>= 1
            v += 1
    return smap, VerificationResult(True, "simplicial", params)


def verify_chain_map(smap: SimplicialMap, dims: Iterable[int], field=GF2) -> VerificationResult:
    """``∂ φ# = φ# ∂`` on every simplex of the given dimensions."""
    f = as_field(field)
    dims = [d for d in dims if d > 0]
    for d in dims:
        for s in enumerate_simplices(smap.source, d):
            left = chain_boundary(smap.chain_image(s, f))
            right = smap.chain_map(boundary(s, f))
            if not (left - right).is_zero():
                return VerificationResult(False, "chain-map", {"dim": d, "p": f.p}, {"simplex": list(s)})
    return VerificationResult(True, "chain-map", {"dims": dims, "p": f.p})


# ---------------------------------------------------------------------------
# images of subcomplexes and Betti comparisons


def _betti(vertices: Sequence[Subset], n: int, r: int, field) -> list[int]:
    K = FlagComplex(sorted(set(vertices), key=lambda s: s.bits), n, r)
    top = K.dimension()
    if top < 0:
        return []
    return betti_numbers(K, top, field)


def _trim(b: list[int]) -> list[int]:
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return b


def predicted_reduction(S: Subset, T: Subset) -> Subset:
    """Ground set whose complex matches the image of ``F_n^T`` (non-isometric cases)."""
    return (T & S) | Subset.of([1])


def verify_phi_m_S_cases(m: int, ell: int, S, T, n: int, field=GF2) -> VerificationResult:
    """Image of ``F_n^T`` under ``φ_S^{[m]}``: isometric copy, or Betti-equal to ``VR(F_n^R; 2(n-1))``."""
    S, T = as_subset(S), as_subset(T)
    if S.size != ell or T.size != ell or ell < n or 1 not in S or S == T or S.max_element > m or T.max_element > m:
        raise InvalidInputError("need |S| = |T| = ell >= n, 1 ∈ S, T != S, S, T ⊆ [m]")
    phi = concentration(m, S, n)
    r = 2 * (n - 1)
    pts = enumerate_space(n, T).vertices
    img = [phi(a) for a in pts]
    params = {"m": m, "ell": ell, "S": S.to_list(), "T": T.to_list(), "n": n, "p": as_field(field).p}
    if 1 not in T and (S - Subset.of([1])).issubset(T):
        if len(set(img)) != len(img):
            return VerificationResult(False, "image-reduction", {**params, "case": "isometry"}, {"reason": "not injective"})
        for i, j in itertools.combinations(range(len(pts)), 2):
            if symdiff_distance(img[i], img[j]) != symdiff_distance(pts[i], pts[j]):
                return VerificationResult(
                    False,
                    "image-reduction",
                    {**params, "case": "isometry"},
                    {"A": pts[i].to_list(), "B": pts[j].to_list()},
                )
        return VerificationResult(True, "image-reduction", {**params, "case": "isometry"})
    case = "many-outside" if (T - S).size >= 2 else "one-outside"
    R = predicted_reduction(S, T)
    b_img = _trim(_betti(img, n, r, field))
    b_R = _trim(_betti(enumerate_space(n, R).vertices, n, r, field)) if R.size >= n else []
    details = {"case": case, "R": R.to_list(), "image_betti": b_img, "reduced_betti": b_R, "image_vertices": len(set(img))}
    ok = b_img == b_R and R != S and R.issubset(S)
    return VerificationResult(ok, "image-reduction", params, None if ok else details, details)


def verify_phi_m_m1(m: int, ell: int, S, n: int, field=GF2) -> VerificationResult:
    """Image of ``F_n^S`` under ``φ_{[m-1]}^{[m]}`` against ``VR(F_n^{S ∖ {m}}; 2(n-1))``."""
    S = as_subset(S)
    if not (m > ell > n) or S.size != ell or 1 not in S or m not in S or S.max_element > m:
        raise InvalidInputError("need m > ell > n and an ell-subset S of [m] containing 1 and m")
    phi = concentration(m, m - 1, n)
    r = 2 * (n - 1)
    img = [phi(a) for a in enumerate_space(n, S).vertices]
    T = S - Subset.of([m])
    b_img = _trim(_betti(img, n, r, field))
    b_T = _trim(_betti(enumerate_space(n, T).vertices, n, r, field))
    params = {"m": m, "ell": ell, "S": S.to_list(), "n": n, "p": as_field(field).p}
    details = {"T": T.to_list(), "image_betti": b_img, "target_betti": b_T}
    ok = b_img == b_T
    return VerificationResult(ok, "last-element-reduction", params, None if ok else details, details)


def verify_contiguity(m: int, n: int, c: int, j: int) -> VerificationResult:
    """``φ_{[j+1]}(σ) ∪ φ_{[j]}(σ)`` is a clique at scale ``2(c+1)`` for each maximal ``σ`` at scale ``2c``.

    ``j >= m`` makes both maps the identity on ``F_n^[m]``.
    """
    if not 1 <= c < n or j < n:
        raise InvalidInputError("need 1 <= c < n and j >= n")
    K = build_complex(n, m, 2 * c)
    ground = Subset.interval(m)
    f_hi = ConcentrationMap(ground, Subset.interval(min(j + 1, m)), n)
    f_lo = ConcentrationMap(ground, Subset.interval(min(j, m)), n)
    params = {"m": m, "n": n, "c": c, "j": j}
    limit = 2 * (c + 1)
    checked = 0
    for sigma in maximal_simplices(K):
        pts = {f_hi(K.vertices[v]) for v in sigma} | {f_lo(K.vertices[v]) for v in sigma}
        checked += 1
        for a, b in itertools.combinations(pts, 2):
            if symdiff_distance(a, b) > limit:
                return VerificationResult(
                    False, "contiguity", params, {"simplex": [K.vertices[v].to_list() for v in sigma], "A": a.to_list(), "B": b.to_list()}
                )
    return VerificationResult(True, "contiguity", params, details={"maximal_simplices": checked})
