"""Ground-set subsets, the symmetric-difference metric and Kneser adjacency.

Subsets of ``[m] = {1, ..., m}`` with ``m <= 64`` are stored as a single
machine word: element ``i`` occupies bit ``i - 1``.  With that encoding the
integer value of the bit mask orders equal-size subsets colexicographically,
which is the canonical vertex order used everywhere in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidInputError

CAPACITY = 64


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of ``[64]`` held as a bit mask with a cached popcount."""

    bits: int
    size: int = field(default=-1, compare=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> CAPACITY:
            raise InvalidInputError(f"subset does not fit in [{CAPACITY}]")
        pc = self.bits.bit_count()
        if self.size == -1:
            object.__setattr__(self, "size", pc)
        elif self.size != pc:
            raise InvalidInputError("cached size disagrees with popcount")

    @classmethod
    def of(cls, elements: Iterable[int]) -> "Subset":
        bits = 0
        for e in elements:
            e = int(e)
            if not 1 <= e <= CAPACITY:
                raise InvalidInputError(f"element {e} outside [1, {CAPACITY}]")
            bits |= 1 << (e - 1)
        return cls(bits)

    @classmethod
    def interval(cls, m: int) -> "Subset":
        """The ground set ``[m]``."""
        if not 0 <= m <= CAPACITY:
            raise InvalidInputError(f"ground set [{m}] exceeds capacity {CAPACITY}")
        return cls((1 << m) - 1)

    def elements(self) -> tuple[int, ...]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length())
            b ^= low
        return tuple(out)

    @property
    def max_element(self) -> int:
        return self.bits.bit_length()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.size

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= CAPACITY and bool(self.bits >> (e - 1) & 1)

    def __and__(self, other: "Subset") -> "Subset":
        return Subset(self.bits & other.bits)

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self.bits | other.bits)

    def __sub__(self, other: "Subset") -> "Subset":
        return Subset(self.bits & ~other.bits)

    def __xor__(self, other: "Subset") -> "Subset":
        return Subset(self.bits ^ other.bits)

    def issubset(self, other: "Subset") -> bool:
        return self.bits & ~other.bits == 0

    def smallest(self, count: int) -> "Subset":
        """The ``count`` smallest elements."""
        b = self.bits
        out = 0
        for _ in range(count):
            if not b:
                raise InvalidInputError("not enough elements")
            low = b & -b
            out |= low
            b ^= low
        return Subset(out)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"

    def to_list(self) -> list[int]:
        return list(self.elements())


def as_subset(x) -> Subset:
    if isinstance(x, Subset):
        return x
    return Subset.of(x)


def _check_same_size(a: Subset, b: Subset) -> int:
    if a.size != b.size:
        raise InvalidInputError(f"subset sizes differ: {a.size} != {b.size}")
    return a.size


def symdiff_distance(a, b) -> int:
    """``|A Δ B|`` for two subsets of equal size."""
    a, b = as_subset(a), as_subset(b)
    _check_same_size(a, b)
    return (a.bits ^ b.bits).bit_count()


def intersects_threshold(a, b, c: int) -> bool:
    """True iff ``|A ∩ B| >= n - c``; equivalent to ``d(A, B) <= 2c``."""
    a, b = as_subset(a), as_subset(b)
    n = _check_same_size(a, b)
    if not 1 <= c <= n:
        raise InvalidInputError(f"threshold c={c} outside [1, {n}]")
    return (a.bits & b.bits).bit_count() >= n - c


def kneser_adjacent(a, b) -> bool:
    """Disjointness of two equal-size subsets."""
    a, b = as_subset(a), as_subset(b)
    _check_same_size(a, b)
    return a.bits & b.bits == 0


class NSubsetSpace:
    """All ``n``-subsets of a ground set under the symmetric-difference metric.

    Vertices are listed in colexicographic order; ``index`` inverts the list.
    Instances are immutable after construction.
    """

    def __init__(self, n: int, ground: Subset, vertices: tuple[Subset, ...]):
        self.n = n
        self.ground = ground
        self.vertices = vertices
        self.index = {v: i for i, v in enumerate(vertices)}

    @property
    def m(self) -> int:
        return self.ground.max_element

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, a) -> bool:
        return as_subset(a) in self.index

    def ordinal(self, a) -> int:
        try:
            return self.index[as_subset(a)]
        except KeyError:
            raise InvalidInputError(f"{a!r} is not a vertex of this space") from None

    @cached_property
    def bits(self) -> np.ndarray:
        return np.array([v.bits for v in self.vertices], dtype=np.uint64)

    @cached_property
    def distances(self) -> np.ndarray:
        from .kernels import backend

        d = backend.pairwise_symdiff(self.bits)
        d.setflags(write=False)
        return d

    def __repr__(self) -> str:
        return f"NSubsetSpace(n={self.n}, ground={self.ground!r}, |V|={len(self)})"


def enumerate_space(n: int, ground) -> NSubsetSpace:
    """The space of ``n``-subsets of ``ground`` (an int ``m`` means ``[m]``)."""
    if isinstance(ground, int):
        ground = Subset.interval(ground)
    ground = as_subset(ground)
    if n < 1 or ground.size < n:
        raise InvalidInputError(f"need |S| >= n >= 1, got |S|={ground.size}, n={n}")
    verts = [Subset.of(c) for c in itertools.combinations(ground.elements(), n)]
    verts.sort(key=lambda s: s.bits)
    return NSubsetSpace(n, ground, tuple(verts))


def kneser_space(n: int, k: int) -> NSubsetSpace:
    """Vertex set of KG(n, k): the ``n``-subsets of ``[2n + k]``."""
    if n < 1 or k < 0:
        raise InvalidInputError("need n >= 1 and k >= 0")
    return enumerate_space(n, 2 * n + k)


def binomial_table(rows: int, cols: int) -> np.ndarray:
    """``table[a, b] = C(a, b)`` as int64; raises if an entry overflows."""
    table = np.zeros((rows + 1, cols + 1), dtype=np.int64)
    for a in range(rows + 1):
        for b in range(min(a, cols) + 1):
            v = comb(a, b)
            if v >= 1 << 63:
                raise OverflowError(f"C({a},{b}) does not fit in int64")
            table[a, b] = v
    return table
