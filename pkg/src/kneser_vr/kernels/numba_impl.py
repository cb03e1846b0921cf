"""numba-compiled kernels.

Every function here has a counterpart with the same signature in
``numpy_impl``.  Arrays are int64 unless stated otherwise; adjacency rows are
packed into uint64 words, vertex ``v`` living in word ``v >> 6``, bit ``v & 63``.
"""

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)


@njit(cache=True, nogil=True)
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, nogil=True)
def ctz64(x):
    # x != 0
    n = 0
    if (x & np.uint64(0xFFFFFFFF)) == 0:
        n += 32
        x >>= np.uint64(32)
    if (x & np.uint64(0xFFFF)) == 0:
        n += 16
        x >>= np.uint64(16)
    if (x & np.uint64(0xFF)) == 0:
        n += 8
        x >>= np.uint64(8)
    if (x & np.uint64(0xF)) == 0:
        n += 4
        x >>= np.uint64(4)
    if (x & np.uint64(0x3)) == 0:
        n += 2
        x >>= np.uint64(2)
    if (x & _ONE) == 0:
        n += 1
    return n


@njit(cache=True, nogil=True)
def pairwise_symdiff(bits):
    n = bits.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            d = popcount64(bits[i] ^ bits[j])
            out[i, j] = d
            out[j, i] = d
    return out


@njit(cache=True, nogil=True)
def adjacency_bitsets(bits, r):
    n = bits.shape[0]
    w = (n + 63) >> 6
    adj = np.zeros((n, max(w, 1)), dtype=np.uint64)
    for i in range(n):
        for j in range(i + 1, n):
            if popcount64(bits[i] ^ bits[j]) <= r:
                adj[i, j >> 6] |= _ONE << np.uint64(j & 63)
                adj[j, i >> 6] |= _ONE << np.uint64(i & 63)
    return adj


@njit(cache=True, nogil=True)
def _clique_walk(adj, k, lo, hi, out, fill):
    n = adj.shape[0]
    w = adj.shape[1]
    cand = np.zeros((k + 1, w), dtype=np.uint64)
    verts = np.zeros(k, dtype=np.int64)
    for v in range(lo, min(hi, n)):
        cand[0, v >> 6] |= _ONE << np.uint64(v & 63)
    count = 0
    t = 0
    while t >= 0:
        word = 0
        while word < w and cand[t, word] == 0:
            word += 1
        if word == w:
            t -= 1
            continue
        b = ctz64(cand[t, word])
        v = word * 64 + b
        cand[t, word] &= ~(_ONE << np.uint64(b))
        verts[t] = v
        if t + 1 == k:
            if fill:
                for s in range(k):
                    out[count, s] = verts[s]
            count += 1
            continue
        pc = 0
        if t == 0:
            # below the leading vertex nothing is a candidate
            for ww in range(w):
                if ww < word:
                    cand[1, ww] = np.uint64(0)
                elif ww == word:
                    if b == 63:
                        cand[1, ww] = np.uint64(0)
                    else:
                        cand[1, ww] = adj[v, ww] & ~((_ONE << np.uint64(b + 1)) - _ONE)
                else:
                    cand[1, ww] = adj[v, ww]
                pc += popcount64(cand[1, ww])
        else:
            for ww in range(w):
                cand[t + 1, ww] = cand[t, ww] & adj[v, ww]
                pc += popcount64(cand[t + 1, ww])
        if pc >= k - t - 1:
            t += 1
    return count


@njit(cache=True, nogil=True)
def count_cliques(adj, k, lo, hi):
    dummy = np.zeros((1, 1), dtype=np.int64)
    return _clique_walk(adj, k, lo, hi, dummy, False)


@njit(cache=True, nogil=True)
def list_cliques(adj, k, lo, hi):
    dummy = np.zeros((1, 1), dtype=np.int64)
    c = _clique_walk(adj, k, lo, hi, dummy, False)
    out = np.empty((c, k), dtype=np.int64)
    _clique_walk(adj, k, lo, hi, out, True)
    return out


@njit(cache=True, nogil=True)
def colex_keys(simplices, binom):
    m, k = simplices.shape
    keys = np.empty(m, dtype=np.int64)
    for i in range(m):
        s = 0
        for t in range(k):
            s += binom[simplices[i, t], t + 1]
        keys[i] = s
    return keys


@njit(cache=True, nogil=True)
def simplex_diameters(simplices, dist):
    m, k = simplices.shape
    out = np.zeros(m, dtype=np.int64)
    for i in range(m):
        d = 0
        for a in range(k):
            for b in range(a + 1, k):
                x = dist[simplices[i, a], simplices[i, b]]
                if x > d:
                    d = x
        out[i] = d
    return out


@njit(cache=True, nogil=True)
def boundary_csr(simplices, binom, face_keys, face_index, p):
    m, k = simplices.shape
    indptr = np.arange(m + 1).astype(np.int64) * k
    rows = np.empty(m * k, dtype=np.int64)
    vals = np.empty(m * k, dtype=np.int64)
    for i in range(m):
        base = i * k
        for om in range(k):
            key = 0
            for t in range(k):
                if t < om:
                    key += binom[simplices[i, t], t + 1]
                elif t > om:
                    key += binom[simplices[i, t], t]
            pos = np.searchsorted(face_keys, key)
            rows[base + om] = face_index[pos]
            vals[base + om] = 1 if om % 2 == 0 else (p - 1) % p
        for a in range(1, k):
            r = rows[base + a]
            vv = vals[base + a]
            b = a - 1
            while b >= 0 and rows[base + b] > r:
                rows[base + b + 1] = rows[base + b]
                vals[base + b + 1] = vals[base + b]
                b -= 1
            rows[base + b + 1] = r
            vals[base + b + 1] = vv
    return indptr, rows, vals


@njit(cache=True, nogil=True)
def _inv_mod(a, p):
    r = 1
    e = p - 2
    b = a % p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True, nogil=True)
def reduce_columns(indptr, rows, vals, nrows, skip, p):
    ncols = indptr.shape[0] - 1
    pivot_col = np.full(max(nrows, 1), -1, dtype=np.int64)
    low = np.full(ncols, -1, dtype=np.int64)
    cap = max(16, rows.shape[0])
    pool_r = np.empty(cap, dtype=np.int64)
    pool_v = np.empty(cap, dtype=np.int64)
    start = np.zeros(ncols, dtype=np.int64)
    length = np.zeros(ncols, dtype=np.int64)
    used = 0
    size = max(nrows, 1)
    buf_r = np.empty(size, dtype=np.int64)
    buf_v = np.empty(size, dtype=np.int64)
    tmp_r = np.empty(size, dtype=np.int64)
    tmp_v = np.empty(size, dtype=np.int64)
    for j in range(ncols):
        if skip[j]:
            continue
        n = indptr[j + 1] - indptr[j]
        for a in range(n):
            buf_r[a] = rows[indptr[j] + a]
            buf_v[a] = vals[indptr[j] + a] % p
        while n > 0:
            piv = pivot_col[buf_r[n - 1]]
            if piv < 0:
                break
            s0 = start[piv]
            kn = length[piv]
            f = (p - buf_v[n - 1] * _inv_mod(pool_v[s0 + kn - 1], p) % p) % p
            a = 0
            b = 0
            c = 0
            while a < n or b < kn:
                if b >= kn or (a < n and buf_r[a] < pool_r[s0 + b]):
                    tmp_r[c] = buf_r[a]
                    tmp_v[c] = buf_v[a]
                    a += 1
                    c += 1
                elif a >= n or pool_r[s0 + b] < buf_r[a]:
                    tmp_r[c] = pool_r[s0 + b]
                    tmp_v[c] = f * pool_v[s0 + b] % p
                    b += 1
                    c += 1
                else:
                    x = (buf_v[a] + f * pool_v[s0 + b]) % p
                    if x != 0:
                        tmp_r[c] = buf_r[a]
                        tmp_v[c] = x
                        c += 1
                    a += 1
                    b += 1
            buf_r, tmp_r = tmp_r, buf_r
            buf_v, tmp_v = tmp_v, buf_v
            n = c
        if n > 0:
            piv_row = buf_r[n - 1]
            pivot_col[piv_row] = j
            low[j] = piv_row
            if used + n > cap:
                cap = max(cap * 2, used + n)
                nr = np.empty(cap, dtype=np.int64)
                nv = np.empty(cap, dtype=np.int64)
                nr[:used] = pool_r[:used]
                nv[:used] = pool_v[:used]
                pool_r = nr
                pool_v = nv
            pool_r[used:used + n] = buf_r[:n]
            pool_v[used:used + n] = buf_v[:n]
            start[j] = used
            length[j] = n
            used += n
    return low
