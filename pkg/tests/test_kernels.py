import os
import subprocess
import sys

import numpy as np
import pytest

from kneser_vr.combinatorics import binomial_table, enumerate_space
from kneser_vr.complex import build_complex
from kneser_vr.kernels import BACKEND_NAME, get_backend

numba_be = get_backend("numba")
numpy_be = get_backend("numpy")


def test_default_backend_is_numba():
    assert BACKEND_NAME == "numba"


def test_env_flag_selects_numpy():
    env = dict(os.environ, KNESER_VR_JIT="0")
    out = subprocess.run([sys.executable, "-c", "from kneser_vr.kernels import BACKEND_NAME; print(BACKEND_NAME)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


@pytest.mark.parametrize("n, m, r", [(2, 5, 2), (3, 6, 4), (3, 7, 4), (3, 7, 2)])
def test_backends_agree(n, m, r):
    bits = enumerate_space(n, m).bits
    assert np.array_equal(numba_be.pairwise_symdiff(bits), numpy_be.pairwise_symdiff(bits))
    adj = numba_be.adjacency_bitsets(bits, r)
    assert np.array_equal(adj, numpy_be.adjacency_bitsets(bits, r))
    nv = len(bits)
    for k in range(1, 6):
        a = numba_be.list_cliques(adj, k, 0, nv)
        b = numpy_be.list_cliques(adj, k, 0, nv)
        assert np.array_equal(a, b)
        assert numba_be.count_cliques(adj, k, 0, nv) == numpy_be.count_cliques(adj, k, 0, nv) == len(a)
        assert np.array_equal(numba_be.list_cliques(adj, k, 3, 9), numpy_be.list_cliques(adj, k, 3, 9))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_boundary_and_reduction_agree(p):
    K = build_complex(3, 7, 4)
    binom = binomial_table(len(K), 5)
    up = K.simplices(3)
    lo = K.simplices(2)
    for be in (numba_be, numpy_be):
        keys = be.colex_keys(lo, binom)
        assert len(np.unique(keys)) == len(keys)
    keys = numba_be.colex_keys(lo, binom)
    order = np.argsort(keys, kind="stable")
    sk, k2o = np.ascontiguousarray(keys[order]), np.ascontiguousarray(order.astype(np.int64))
    c1 = numba_be.boundary_csr(up, binom, sk, k2o, p)
    c2 = numpy_be.boundary_csr(up, binom, sk, k2o, p)
    for x, y in zip(c1, c2):
        assert np.array_equal(x, y)
    skip = np.zeros(len(up), dtype=np.bool_)
    l1 = numba_be.reduce_columns(*c1, len(lo), skip, p)
    l2 = numpy_be.reduce_columns(*c2, len(lo), skip, p)
    assert np.array_equal(l1, l2)


def test_diameters_agree():
    K = build_complex(3, 7, 4)
    s = K.simplices(4)
    assert np.array_equal(numba_be.simplex_diameters(s, K.distances), numpy_be.simplex_diameters(s, K.distances))


@pytest.mark.slow
def test_numpy_backend_end_to_end():
    env = dict(os.environ, KNESER_VR_JIT="0")
    code = ("from kneser_vr.complex import kneser_complex; from kneser_vr.homology import betti_numbers;"
            "print(betti_numbers(kneser_complex(3, 0), 9), betti_numbers(kneser_complex(2, 2), 3, 3))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "[0, 0, 0, 0, 0, 0, 0, 0, 0, 1] [0, 0, 10, 0]"
