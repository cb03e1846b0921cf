"""Vietoris-Rips (flag) complexes of n-subset spaces.

A ``FlagComplex`` stores only its vertices and the packed adjacency of its
1-skeleton; simplices are cliques and are produced on demand, in
lexicographic order of vertex ordinals.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Iterator, Sequence, TextIO

import numpy as np

from .combinatorics import NSubsetSpace, Subset, as_subset, enumerate_space
from .errors import InvalidInputError
from .kernels import backend

Simplex = tuple[int, ...]


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("KNESER_VR_THREADS", "1")))
    except ValueError:
        return 1


class FlagComplex:
    """VR complex at scale ``r`` on a list of equal-size subsets.

    ``vertices`` is usually a whole ``NSubsetSpace`` in colex order, but
    induced subcomplexes (links, images of maps) use arbitrary vertex lists.
    """

    def __init__(self, vertices: Sequence[Subset], n: int, scale: int, space: NSubsetSpace | None = None):
        if scale < 0:
            raise InvalidInputError("scale must be non-negative")
        self.vertices = tuple(vertices)
        for v in self.vertices:
            if v.size != n:
                raise InvalidInputError(f"vertex {v!r} does not have size {n}")
        self.n = n
        self.scale = int(scale)
        self.space = space
        bits = np.array([v.bits for v in self.vertices], dtype=np.uint64)
        self.bits = bits
        self.adjacency = backend.adjacency_bitsets(bits, self.scale) if len(bits) else np.zeros((0, 1), np.uint64)
        self.adjacency.setflags(write=False)
        self.index = {v: i for i, v in enumerate(self.vertices)}

    # -- basic structure -------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def ground(self) -> Subset:
        if self.space is not None:
            return self.space.ground
        bits = 0
        for v in self.vertices:
            bits |= v.bits
        return Subset(bits)

    @property
    def m(self) -> int:
        return self.ground.max_element

    @cached_property
    def neighbors(self) -> list[int]:
        """Adjacency rows as Python int bitsets."""
        out = []
        for row in self.adjacency:
            x = 0
            for i, word in enumerate(row):
                x |= int(word) << (64 * i)
            out.append(x)
        return out

    @cached_property
    def distances(self) -> np.ndarray:
        d = backend.pairwise_symdiff(self.bits)
        d.setflags(write=False)
        return d

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.neighbors[i] >> j & 1)

    def ordinal(self, a) -> int:
        try:
            return self.index[as_subset(a)]
        except KeyError:
            raise InvalidInputError(f"{a!r} is not a vertex of this complex") from None

    def ordinals(self, subsets) -> Simplex:
        return tuple(sorted(self.ordinal(a) for a in subsets))

    def is_simplex(self, sigma: Sequence[int]) -> bool:
        sigma = list(sigma)
        if not sigma or len(set(sigma)) != len(sigma):
            return False
        if any(not 0 <= v < len(self) for v in sigma):
            return False
        mask = 0
        for v in sigma:
            mask |= 1 << v
        return all((self.neighbors[v] | (1 << v)) & mask == mask for v in sigma)

    # -- simplices -------------------------------------------------------

    def count_simplices(self, dim: int) -> int:
        if dim < 0 or len(self) == 0:
            return 0
        return int(backend.count_cliques(self.adjacency, dim + 1, 0, len(self)))

    def simplices(self, dim: int, workers: int | None = None) -> np.ndarray:
        """All ``dim``-simplices as a ``(count, dim + 1)`` array, lex order.

        With ``workers > 1`` the leading-vertex range is split into blocks
        processed concurrently; blocks are concatenated in order, so the
        result does not depend on the worker count.
        """
        if dim < 0:
            raise InvalidInputError("dim must be >= 0")
        nv = len(self)
        if nv == 0:
            return np.empty((0, dim + 1), dtype=np.int64)
        workers = default_workers() if workers is None else max(1, workers)
        if workers == 1:
            return backend.list_cliques(self.adjacency, dim + 1, 0, nv)
        bounds = np.linspace(0, nv, min(workers, nv) + 1).astype(int)
        blocks = list(zip(bounds[:-1], bounds[1:]))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: backend.list_cliques(self.adjacency, dim + 1, int(b[0]), int(b[1])), blocks))
        return np.concatenate(parts, axis=0)

    def f_vector(self, max_dim: int) -> list[int]:
        return [self.count_simplices(d) for d in range(max_dim + 1)]

    def dimension(self) -> int:
        """Largest ``d`` with a ``d``-simplex (``-1`` when empty)."""
        d = -1
        while self.count_simplices(d + 1) > 0:
            d += 1
        return d

    def induced(self, ordinals: Sequence[int]) -> "FlagComplex":
        """Induced subcomplex on the given vertex ordinals (kept in the given order)."""
        sub = FlagComplex([self.vertices[i] for i in ordinals], self.n, self.scale)
        sub.parent_ordinals = tuple(ordinals)
        return sub

    def __repr__(self) -> str:
        return f"FlagComplex(n={self.n}, |V|={len(self)}, r={self.scale})"


def build_complex(n: int, ground, r: int) -> FlagComplex:
    """``VR(F_n^S; r)`` where ``ground`` is ``S`` (or ``m`` for ``[m]``)."""
    space = enumerate_space(n, ground)
    return FlagComplex(space.vertices, n, r, space=space)


def kneser_complex(n: int, k: int) -> FlagComplex:
    """The independence complex of KG(n, k), i.e. ``VR(F_n^[2n+k]; 2(n-1))``."""
    return build_complex(n, 2 * n + k, 2 * (n - 1))


def enumerate_simplices(K: FlagComplex, dim: int) -> Iterator[Simplex]:
    """Stream every ``dim``-simplex once, lexicographically.

    Only the cliques led by one vertex are materialised at a time.
    """
    if dim < 0:
        raise InvalidInputError("dim must be >= 0")
    for v in range(len(K)):
        block = backend.list_cliques(K.adjacency, dim + 1, v, v + 1)
        for row in block:
            yield tuple(int(x) for x in row)


def is_maximal_simplex(K: FlagComplex, sigma: Sequence[int]) -> bool:
    """No vertex outside ``sigma`` is adjacent to all of it."""
    if not K.is_simplex(sigma):
        raise InvalidInputError(f"{tuple(sigma)} is not a simplex")
    common = (1 << len(K)) - 1
    for v in sigma:
        common &= K.neighbors[v]
    return common == 0


def maximal_simplices(K: FlagComplex) -> Iterator[Simplex]:
    """Maximal cliques (Bron-Kerbosch with pivoting on int bitsets)."""
    nbrs = K.neighbors

    def members(x):
        while x:
            low = x & -x
            yield low.bit_length() - 1
            x ^= low

    def bk(r, p, x):
        if not p and not x:
            yield tuple(sorted(r))
            return
        pivot = max(members(p | x), key=lambda u: (p & nbrs[u]).bit_count())
        for v in list(members(p & ~nbrs[pivot])):
            yield from bk(r + [v], p & nbrs[v], x & nbrs[v])
            p &= ~(1 << v)
            x |= 1 << v

    if len(K) == 0:
        return
    yield from bk([], (1 << len(K)) - 1, 0)


def convex_hull(K: FlagComplex, sigma: Sequence[int]) -> FlagComplex:
    """``VR(F_n^T; r)`` with ``T`` the union of the members of ``sigma``."""
    if not sigma:
        raise InvalidInputError("convex hull of an empty simplex")
    t = 0
    for v in sigma:
        t |= K.vertices[v].bits
    return build_complex(K.n, Subset(t), K.scale)


def link(K: FlagComplex, v: int) -> FlagComplex:
    """Induced subcomplex on the neighbours of ``v``."""
    if not 0 <= v < len(K):
        raise InvalidInputError(f"vertex {v} out of range")
    nb = K.neighbors[v]
    return K.induced([u for u in range(len(K)) if nb >> u & 1])


def write_simplices(K: FlagComplex, dim: int, out: TextIO, maximal_only: bool = False) -> int:
    """Write ``dim``-simplices in the facet-list text format; returns the count."""
    out.write(f"# n={K.n} m={K.m} r={K.scale} dim={dim}\n")
    count = 0
    for s in enumerate_simplices(K, dim):
        if maximal_only and not is_maximal_simplex(K, s):
            continue
        out.write(" ".join(map(str, s)) + "\n")
        count += 1
    return count


def read_simplices(src: TextIO) -> tuple[dict, list[Simplex]]:
    """Parse the facet-list format back into ``(header, simplices)``."""
    header: dict = {}
    rows: list[Simplex] = []
    for line in src:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                key, _, val = tok.partition("=")
                header[key] = int(val)
            continue
        rows.append(tuple(int(x) for x in line.split()))
    return header, rows
