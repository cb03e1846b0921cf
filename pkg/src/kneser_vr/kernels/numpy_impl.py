"""Pure numpy / Python kernels, selected when numba is disabled.

Vectorised numpy where the computation is data-parallel; plain Python
(arbitrary-size int bitsets, dict columns) for the branching kernels.
"""

import numpy as np


def _popcount(x):
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(x).astype(np.int64)
    as_bytes = x.astype(np.uint64).view(np.uint8).reshape(x.shape + (8,))
    return np.unpackbits(as_bytes, axis=-1).sum(axis=-1).astype(np.int64)


def pairwise_symdiff(bits):
    bits = np.asarray(bits, dtype=np.uint64)
    return _popcount(bits[:, None] ^ bits[None, :])


def adjacency_bitsets(bits, r):
    d = pairwise_symdiff(bits)
    n = d.shape[0]
    mask = d <= r
    np.fill_diagonal(mask, False)
    w = max((n + 63) >> 6, 1)
    padded = np.zeros((n, w * 64), dtype=bool)
    padded[:, :n] = mask
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(n, w)


def _rows_as_ints(adj):
    out = []
    for row in adj:
        x = 0
        for i, word in enumerate(row):
            x |= int(word) << (64 * i)
        out.append(x)
    return out


def _walk(nbrs, k, lo, hi, sink):
    def rec(prefix, cand):
        if len(prefix) == k:
            sink(prefix)
            return
        need = k - len(prefix)
        while cand:
            if cand.bit_count() < need:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(prefix + (v,), cand & nbrs[v])

    n = len(nbrs)
    for v in range(lo, min(hi, n)):
        above = nbrs[v] & ~((1 << (v + 1)) - 1)
        rec((v,), above)


def count_cliques(adj, k, lo, hi):
    nbrs = _rows_as_ints(adj)
    box = [0]

    def sink(_):
        box[0] += 1

    _walk(nbrs, k, lo, hi, sink)
    return box[0]


def list_cliques(adj, k, lo, hi):
    nbrs = _rows_as_ints(adj)
    found = []
    _walk(nbrs, k, lo, hi, found.append)
    if not found:
        return np.empty((0, k), dtype=np.int64)
    return np.array(found, dtype=np.int64).reshape(len(found), k)


def colex_keys(simplices, binom):
    simplices = np.asarray(simplices, dtype=np.int64)
    m, k = simplices.shape
    if m == 0:
        return np.empty(0, dtype=np.int64)
    return binom[simplices, np.arange(1, k + 1)].sum(axis=1).astype(np.int64)


def simplex_diameters(simplices, dist):
    simplices = np.asarray(simplices, dtype=np.int64)
    m, k = simplices.shape
    out = np.zeros(m, dtype=np.int64)
    for a in range(k):
        for b in range(a + 1, k):
            np.maximum(out, dist[simplices[:, a], simplices[:, b]], out=out)
    return out


def boundary_csr(simplices, binom, face_keys, face_index, p):
    simplices = np.asarray(simplices, dtype=np.int64)
    m, k = simplices.shape
    rows = np.empty((m, k), dtype=np.int64)
    vals = np.empty((m, k), dtype=np.int64)
    pos_cols = np.arange(1, k)
    for om in range(k):
        face = np.delete(simplices, om, axis=1)
        keys = binom[face, pos_cols].sum(axis=1) if k > 1 else np.zeros(m, dtype=np.int64)
        rows[:, om] = face_index[np.searchsorted(face_keys, keys)]
        vals[:, om] = 1 if om % 2 == 0 else (p - 1) % p
    order = np.argsort(rows, axis=1, kind="stable")
    rows = np.take_along_axis(rows, order, axis=1)
    vals = np.take_along_axis(vals, order, axis=1)
    indptr = np.arange(m + 1, dtype=np.int64) * k
    return indptr, rows.ravel(), vals.ravel()


def reduce_columns(indptr, rows, vals, nrows, skip, p):
    ncols = len(indptr) - 1
    pivot_col = {}
    reduced = {}
    low = np.full(ncols, -1, dtype=np.int64)
    indptr = indptr.tolist()
    rows = rows.tolist()
    vals = vals.tolist()
    for j in range(ncols):
        if skip[j]:
            continue
        col = {rows[t]: vals[t] % p for t in range(indptr[j], indptr[j + 1])}
        while col:
            lo = max(col)
            piv = pivot_col.get(lo)
            if piv is None:
                break
            other = reduced[piv]
            f = (-col[lo] * pow(other[lo], p - 2, p)) % p
            for r, v in other.items():
                x = (col.get(r, 0) + f * v) % p
                if x:
                    col[r] = x
                else:
                    col.pop(r, None)
        if col:
            lo = max(col)
            pivot_col[lo] = j
            reduced[j] = col
            low[j] = lo
    return low
