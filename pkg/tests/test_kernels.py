"""The numba and numpy kernel paths agree exactly."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subspace_lab import _kernels
from subspace_lab.graphs import build_distant_graph, build_grassmann_graph

from conftest import grassmannian

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def test_backend_name():
    assert _kernels.backend_name("numpy") == "numpy"
    with pytest.raises(ValueError):
        _kernels.backend_name("cuda")


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 150), st.integers(0, 2**32 - 1))
def test_pack_unpack_roundtrip(n, seed):
    dense = np.random.default_rng(seed).random((n, n)) < 0.3
    packed = _kernels.pack_rows(dense)
    assert packed.shape == (n, (n + 63) // 64)
    assert np.array_equal(_kernels.unpack_rows(packed, n), dense)


@needs_numba
@pytest.mark.parametrize("p,m,k", [(2, 2, 1), (3, 2, 1), (2, 1, 2), (2, 3, 1), (2, 2, 2)])
def test_stacked_ranks_backends_agree(p, m, k):
    G = grassmannian(p, m, k)
    a = _kernels.stacked_ranks(G.bases, G.field, "numba")
    b = _kernels.stacked_ranks(G.bases, G.field, "numpy")
    assert np.array_equal(a, b)
    assert np.all(np.diag(a) == m)


@needs_numba
@pytest.mark.parametrize("p,m", [(2, 2), (3, 2)])
def test_witness_scan_backends_agree(p, m):
    G = grassmannian(p, m)
    packed = build_distant_graph(G).adjacency
    rng = np.random.default_rng(1)
    pi = rng.integers(0, len(G), 300)
    pj = rng.integers(0, len(G), 300)
    fa, ca = _kernels.witness_scan(packed, pi, pj, "numba")
    fb, cb = _kernels.witness_scan(packed, pi, pj, "numpy")
    assert np.array_equal(fa, fb) and np.array_equal(ca, cb)


@needs_numba
@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3)])
def test_all_distances_backends_agree(p, m):
    G = grassmannian(p, m)
    for g in (build_distant_graph(G), build_grassmann_graph(G)):
        assert np.array_equal(_kernels.all_distances(g.dense, "numba"), _kernels.all_distances(g.dense, "numpy"))


@needs_numba
@settings(max_examples=25, deadline=None)
@given(st.integers(1, 90), st.floats(0.0, 0.2), st.integers(0, 2**32 - 1))
def test_all_distances_random_graphs(n, density, seed):
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < density, 1)
    dense = upper | upper.T
    a = _kernels.all_distances(dense, "numba")
    b = _kernels.all_distances(dense, "numpy")
    assert np.array_equal(a, b)
    assert np.array_equal(a, a.T)
