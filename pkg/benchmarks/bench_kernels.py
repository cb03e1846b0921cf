"""Time the numba kernels against the pure-numpy fallback.

Each kernel runs on the same inputs under both backends; outputs are
compared before timing.  The end-to-end row runs ``kneser-vr betti`` in a
subprocess with ``KNESER_VR_JIT`` toggled.

    python benchmarks/bench_kernels.py --n 3 --k 1 --dim 4
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from kneser_vr.combinatorics import binomial_table
from kneser_vr.complex import kneser_complex
from kneser_vr.kernels import get_backend


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def kernel_suite(be, K, dim, p):
    binom = binomial_table(len(K), dim + 2)
    upper = be.list_cliques(K.adjacency, dim + 2, 0, len(K))
    lower = be.list_cliques(K.adjacency, dim + 1, 0, len(K))
    keys = be.colex_keys(lower, binom)
    order = np.argsort(keys, kind="stable")
    sk, k2o = np.ascontiguousarray(keys[order]), np.ascontiguousarray(order.astype(np.int64))
    csr = be.boundary_csr(upper, binom, sk, k2o, p)
    skip = np.zeros(len(upper), dtype=np.bool_)
    return {
        "pairwise_symdiff": lambda: be.pairwise_symdiff(K.bits),
        "adjacency_bitsets": lambda: be.adjacency_bitsets(K.bits, K.scale),
        f"count_cliques(d={dim + 1})": lambda: be.count_cliques(K.adjacency, dim + 2, 0, len(K)),
        f"list_cliques(d={dim + 1})": lambda: be.list_cliques(K.adjacency, dim + 2, 0, len(K)),
        f"colex_keys(d={dim})": lambda: be.colex_keys(lower, binom),
        f"boundary_csr(d={dim + 1})": lambda: be.boundary_csr(upper, binom, sk, k2o, p),
        f"reduce_columns(d={dim + 1})": lambda: be.reduce_columns(*csr, len(lower), skip, p),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def end_to_end(n, k, jit):
    env = dict(os.environ, KNESER_VR_JIT="1" if jit else "0")
    cmd = [sys.executable, "-m", "kneser_vr", "betti", "--n", str(n), "--k", str(k), "--format", "csv"]
    t = time.perf_counter()
    subprocess.run(cmd, env=env, check=True, capture_output=True)
    return time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--dim", type=int, default=4, help="boundary ∂_{dim+1} is benchmarked")
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--e2e", action="store_true", help="also time full betti runs (slow without numba)")
    args = ap.parse_args()

    K = kneser_complex(args.n, args.k)
    fast, slow = get_backend("numba"), get_backend("numpy")
    jit_suite = kernel_suite(fast, K, args.dim, args.p)
    np_suite = kernel_suite(slow, K, args.dim, args.p)
    print(f"KG({args.n},{args.k}): {len(K)} vertices, field GF({args.p})")
    print(f"{'kernel':28s} {'numba [s]':>11s} {'numpy [s]':>11s} {'speedup':>9s}  match")
    for name in jit_suite:
        jit_suite[name]()  # compile
        tj, oj = best_of(jit_suite[name], args.repeat)
        tn, on = best_of(np_suite[name], max(1, args.repeat // 3))
        print(f"{name:28s} {tj:11.4f} {tn:11.4f} {tn / max(tj, 1e-9):8.1f}x  {same(oj, on)}")
    if args.e2e:
        tj = end_to_end(args.n, args.k, True)
        tn = end_to_end(args.n, args.k, False)
        print(f"{'betti end-to-end':28s} {tj:11.2f} {tn:11.2f} {tn / tj:8.1f}x")


if __name__ == "__main__":
    main()
