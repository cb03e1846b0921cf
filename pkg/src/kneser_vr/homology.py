"""Reduced homology ranks over prime fields and even-scale persistence.

Ranks come from sparse column reduction (lowest-one pivoting) of boundary
matrices assembled one dimension at a time.  Dimensions are processed from
the top of the requested window downwards so that pivots of ``∂_{d+1}``
clear the matching columns of ``∂_d`` before they are reduced.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import binomial_table, enumerate_space
from .complex import FlagComplex, Simplex
from .errors import InvalidInputError, ResourceLimitError
from .kernels import backend

log = logging.getLogger(__name__)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """Integers modulo a prime ``p``."""

    p: int = 2

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidInputError(f"{self.p} is not prime")

    def normalize(self, x: int) -> int:
        return x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    def neg(self, x: int) -> int:
        return (-x) % self.p


GF2 = PrimeField(2)


def as_field(field) -> PrimeField:
    if isinstance(field, PrimeField):
        return field
    return PrimeField(int(field))


@dataclass(frozen=True)
class ResourceCaps:
    """Hard limits checked before every large allocation.

    ``max_simplices`` bounds the number of simplices materialised in any one
    dimension; ``memory_mb`` bounds a conservative estimate of the bytes held
    for the two dimensions being reduced.
    """

    max_simplices: int = 1_000_000
    memory_mb: int = 8192

    def __post_init__(self):
        if self.max_simplices <= 0 or self.memory_mb <= 0:
            raise InvalidInputError("resource caps must be positive")


DEFAULT_CAPS = ResourceCaps()


# ---------------------------------------------------------------------------
# chains


@dataclass
class ChainVector:
    """Sparse chain: oriented simplex (sorted vertex tuple) -> nonzero coefficient."""

    dim: int
    entries: dict = field(default_factory=dict)
    p: int = 2

    def __post_init__(self):
        clean = {}
        for s, c in self.entries.items():
            c %= self.p
            if c:
                clean[tuple(s)] = c
        self.entries = clean

    def coefficient(self, simplex: Sequence[int]) -> int:
        return self.entries.get(tuple(simplex), 0)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "ChainVector") -> "ChainVector":
        if other.dim != self.dim or other.p != self.p:
            raise InvalidInputError("chains live in different groups")
        out = dict(self.entries)
        for s, c in other.entries.items():
            out[s] = (out.get(s, 0) + c) % self.p
        return ChainVector(self.dim, out, self.p)

    def scale(self, a: int) -> "ChainVector":
        return ChainVector(self.dim, {s: c * a for s, c in self.entries.items()}, self.p)

    def __neg__(self) -> "ChainVector":
        return self.scale(-1)

    def __sub__(self, other: "ChainVector") -> "ChainVector":
        return self + (-other)


def boundary(simplex: Sequence[int], field=GF2) -> ChainVector:
    """Alternating sum of codimension-one faces of a sorted simplex."""
    f = as_field(field)
    s = tuple(simplex)
    if not s:
        raise InvalidInputError("empty simplex")
    if list(s) != sorted(set(s)):
        raise InvalidInputError("simplex vertices must be strictly increasing")
    dim = len(s) - 1
    if dim == 0:
        return ChainVector(-1, {}, f.p)
    return ChainVector(dim - 1, {s[:i] + s[i + 1:]: (-1) ** i for i in range(len(s))}, f.p)


def chain_boundary(z: ChainVector) -> ChainVector:
    out: dict = {}
    p = z.p
    for s, c in z.entries.items():
        if len(s) == 1:
            continue
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            out[face] = (out.get(face, 0) + (c if i % 2 == 0 else -c)) % p
    return ChainVector(z.dim - 1, out, p)


def cycle_check(K: FlagComplex | None, z: ChainVector) -> bool:
    """True iff ``∂z = 0`` (and, given ``K``, every simplex of ``z`` lies in ``K``)."""
    if K is not None:
        for s in z.entries:
            if len(s) != z.dim + 1 or not K.is_simplex(s):
                raise InvalidInputError(f"{s} is not a {z.dim}-simplex of the complex")
    return chain_boundary(z).is_zero()


# ---------------------------------------------------------------------------
# rank computation


def _check_caps(caps: ResourceCaps, dim: int, count: int, held_bytes: int) -> None:
    if count > caps.max_simplices:
        raise ResourceLimitError(
            "max_simplices", count, caps.max_simplices, f"{count} simplices in dimension {dim}"
        )
    if held_bytes > caps.memory_mb * 2**20:
        raise ResourceLimitError(
            "memory_mb", held_bytes // 2**20, caps.memory_mb, f"estimated while assembling dimension {dim}"
        )


def _estimate_bytes(count: int, dim: int) -> int:
    # simplex array + CSR (rows, vals, indptr) + reduced-column pool headroom
    k = dim + 1
    return count * k * 8 + count * k * 16 * 3 + count * 8 * 4


class _Layer:
    """Simplices of one dimension with a colex-key index for face lookup."""

    def __init__(self, simplices: np.ndarray, binom: np.ndarray):
        self.simplices = simplices
        keys = backend.colex_keys(simplices, binom) if len(simplices) else np.empty(0, np.int64)
        order = np.argsort(keys, kind="stable")
        self.sorted_keys = np.ascontiguousarray(keys[order])
        self.key_to_ordinal = np.ascontiguousarray(order.astype(np.int64))

    def __len__(self) -> int:
        return len(self.simplices)


def _binom_for(K: FlagComplex, top: int) -> np.ndarray:
    nv = max(len(K), 1)
    try:
        return binomial_table(nv, top + 1)
    except OverflowError as exc:
        raise ResourceLimitError("key_width", comb(nv, min(top + 1, nv)), 2**63 - 1, str(exc)) from None


def rank_profile(
    K: FlagComplex,
    lo: int,
    hi: int,
    field=GF2,
    caps: ResourceCaps = DEFAULT_CAPS,
    workers: int | None = None,
) -> tuple[dict[int, int], dict[int, int]]:
    """Ranks of ``∂_d`` for ``lo <= d <= hi`` plus face counts ``f_d`` for ``lo-1 <= d <= hi``.

    ``∂_0`` is the augmentation map, so its rank is 1 on a nonempty complex.
    """
    f = as_field(field)
    if lo < 0 or hi < lo:
        raise InvalidInputError("need 0 <= lo <= hi")
    binom = _binom_for(K, hi)
    ranks: dict[int, int] = {}
    counts: dict[int, int] = {}

    def load(d):
        c = K.count_simplices(d)
        counts[d] = c
        return c

    upper_count = load(hi)
    _check_caps(caps, hi, upper_count, _estimate_bytes(upper_count, hi))
    upper = _Layer(K.simplices(hi, workers) if upper_count else np.empty((0, hi + 1), np.int64), binom)
    cleared: np.ndarray | None = None
    for d in range(hi, max(lo, 1) - 1, -1):
        lower_count = load(d - 1)
        _check_caps(caps, d - 1, lower_count, _estimate_bytes(upper_count, d) + _estimate_bytes(lower_count, d - 1))
        lower_simp = K.simplices(d - 1, workers) if lower_count else np.empty((0, d), np.int64)
        lower = _Layer(lower_simp, binom)
        if len(upper) == 0 or len(lower) == 0:
            ranks[d] = 0
            cleared = np.empty(0, np.int64)
        else:
            indptr, rows, vals = backend.boundary_csr(upper.simplices, binom, lower.sorted_keys, lower.key_to_ordinal, f.p)
            skip = np.zeros(len(upper), dtype=np.bool_)
            if cleared is not None and len(cleared):
                skip[cleared] = True
            low = backend.reduce_columns(indptr, rows, vals, len(lower), skip, f.p)
            pivots = low[low >= 0]
            ranks[d] = int(len(pivots))
            cleared = pivots
            log.debug("rank ∂_%d = %d (%d columns, %d cleared)", d, ranks[d], len(upper), int(skip.sum()))
        upper, upper_count = lower, lower_count
    if lo == 0:
        if 0 not in counts:
            load(0)
        ranks[0] = 1 if counts[0] > 0 else 0
    return ranks, counts


def betti_numbers(
    K: FlagComplex,
    max_dim: int,
    field=GF2,
    caps: ResourceCaps = DEFAULT_CAPS,
    dims: Iterable[int] | None = None,
    workers: int | None = None,
) -> list[int]:
    """Reduced Betti numbers ``b_0 .. b_max_dim``.

    With ``dims`` only those degrees are computed (others are reported as
    ``None``); the work then touches dimensions ``min(dims)-1 .. max(dims)+1``.
    """
    if max_dim < 0:
        raise InvalidInputError("max_dim must be >= 0")
    wanted = sorted(set(range(max_dim + 1) if dims is None else dims))
    if not wanted:
        return [None] * (max_dim + 1)
    if wanted[0] < 0 or wanted[-1] > max_dim:
        raise InvalidInputError("requested degrees must lie in [0, max_dim]")
    if len(K) == 0:
        # reduced homology of the empty complex is concentrated in degree -1
        return [0 if q in wanted else None for q in range(max_dim + 1)]
    top = K.dimension()
    hi = min(wanted[-1] + 1, top + 1)
    lo = min(wanted[0], hi)
    ranks, counts = rank_profile(K, lo, hi, field, caps, workers)
    out: list = [None] * (max_dim + 1)
    for q in wanted:
        if q > top:
            out[q] = 0
            continue
        out[q] = counts[q] - ranks.get(q, 0) - ranks.get(q + 1, 0)
    return out


def euler_characteristic(K: FlagComplex, reduced: bool = True) -> int:
    chi = sum((-1) ** d * c for d, c in enumerate(K.f_vector(max(K.dimension(), 0))))
    return chi - 1 if reduced and len(K) else chi


# ---------------------------------------------------------------------------
# persistence


@dataclass
class Barcode:
    """Reduced persistence intervals per dimension; ``None`` death means ∞."""

    intervals: dict[int, list[tuple[int, int | None]]]
    field: int = 2

    def max_length(self) -> int:
        worst = 0
        for bars in self.intervals.values():
            for b, d in bars:
                if d is None:
                    return -1
                worst = max(worst, d - b)
        return worst

    def alive_at(self, dim: int, scale: int) -> list[tuple[int, int | None]]:
        return [(b, d) for b, d in self.intervals.get(dim, []) if b <= scale and (d is None or d > scale)]

    def to_records(self) -> list[dict]:
        return [
            {"dim": d, "birth": b, "death": e}
            for d in sorted(self.intervals)
            for b, e in self.intervals[d]
        ]


def persistence_barcode(
    n: int,
    ground,
    max_dim: int,
    field=GF2,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> Barcode:
    """Barcode of ``VR(F_n^S; 0) ⊂ VR(F_n^S; 2) ⊂ ... ⊂ VR(F_n^S; 2n)``."""
    f = as_field(field)
    if max_dim < 0:
        raise InvalidInputError("max_dim must be >= 0")
    space = enumerate_space(n, ground)
    full = FlagComplex(space.vertices, n, 2 * n, space=space)
    dist = full.distances
    nv = len(full)
    top = min(max_dim + 1, nv - 1)
    binom = _binom_for(full, top)

    layers = {}
    for d in range(top, -1, -1):
        c = comb(nv, d + 1)
        _check_caps(caps, d, c, _estimate_bytes(c, d))
        simp = full.simplices(d)
        diam = backend.simplex_diameters(simp, dist) if d > 0 else np.zeros(len(simp), np.int64)
        order = np.argsort(diam, kind="stable")
        position = np.empty(len(simp), dtype=np.int64)
        position[order] = np.arange(len(simp))
        keys = backend.colex_keys(simp, binom)
        korder = np.argsort(keys, kind="stable")
        layers[d] = {
            "simplices": simp[order],
            "diam": diam[order],
            "sorted_keys": np.ascontiguousarray(keys[korder]),
            "key_to_position": np.ascontiguousarray(position[korder]),
        }

    intervals: dict[int, list] = {q: [] for q in range(max_dim + 1)}
    pivot_rows: dict[int, np.ndarray] = {}
    zero_cols: dict[int, np.ndarray] = {}
    cleared = None
    for d in range(top, 0, -1):
        up, down = layers[d], layers[d - 1]
        indptr, rows, vals = backend.boundary_csr(up["simplices"], binom, down["sorted_keys"], down["key_to_position"], f.p)
        skip = np.zeros(len(up["simplices"]), dtype=np.bool_)
        if cleared is not None and len(cleared):
            skip[cleared] = True
        low = backend.reduce_columns(indptr, rows, vals, len(down["simplices"]), skip, f.p)
        paired = np.nonzero(low >= 0)[0]
        if d - 1 <= max_dim:
            for j in paired:
                b = int(down["diam"][low[j]])
                e = int(up["diam"][j])
                if e > b:
                    intervals[d - 1].append((b, e))
        zero_cols[d] = np.nonzero((low < 0) & ~skip)[0]
        pivot_rows[d - 1] = low[paired]
        cleared = low[paired]
    zero_cols[0] = np.arange(len(layers[0]["simplices"]))

    for q in range(min(max_dim, top) + 1):
        if q == top and top < nv - 1:
            # cycles in the top loaded dimension would need one more layer
            break
        killed = np.zeros(len(layers[q]["simplices"]), dtype=bool)
        if q in pivot_rows:
            killed[pivot_rows[q]] = True
        for j in zero_cols.get(q, []):
            if not killed[j]:
                intervals[q].append((int(layers[q]["diam"][j]), None))
    # reduced homology: drop the component that never dies
    ess0 = [iv for iv in intervals.get(0, []) if iv[1] is None]
    if ess0:
        intervals[0].remove(min(ess0))
    for q in intervals:
        intervals[q].sort(key=lambda iv: (iv[0], float("inf") if iv[1] is None else iv[1]))
    return Barcode(intervals, f.p)
