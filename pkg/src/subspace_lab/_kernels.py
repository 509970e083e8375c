"""Hot pair-quadratic kernels.

Each kernel has a numba ``@njit`` implementation and a pure-numpy fallback
with identical results.  The numba path is used unless numba is missing or
``SUBSPACE_LAB_NUMBA=0`` is set in the environment; ``SUBSPACE_LAB_THREADS``
caps numba's worker count.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit, prange

    if "NUMBA_THREADING_LAYER" not in os.environ:
        numba.config.THREADING_LAYER = "workqueue"

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("SUBSPACE_LAB_NUMBA", "1").lower() not in ("0", "false", "no", "off")

if HAVE_NUMBA and os.environ.get("SUBSPACE_LAB_THREADS"):
    try:
        numba.set_num_threads(max(1, min(int(os.environ["SUBSPACE_LAB_THREADS"]), numba.config.NUMBA_NUM_THREADS)))
    except ValueError:
        pass


def backend_name(backend: str | None = None) -> str:
    if backend is None:
        return "numba" if USE_NUMBA else "numpy"
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


# --------------------------------------------------------------------------
# bit packing

def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a boolean (N, N) matrix into (N, ceil(N/64)) uint64 words."""
    dense = np.asarray(dense, dtype=bool)
    n_rows, n_cols = dense.shape
    words = max(1, (n_cols + 63) // 64)
    padded = np.zeros((n_rows, words * 64), dtype=bool)
    padded[:, :n_cols] = dense
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).reshape(n_rows, words)


def unpack_rows(packed: np.ndarray, n_cols: int) -> np.ndarray:
    bits = np.unpackbits(packed.view(np.uint8).reshape(packed.shape[0], -1), axis=1, bitorder="little")
    return bits[:, :n_cols].astype(bool)


# --------------------------------------------------------------------------
# rank of [X_i ; X_j] for all pairs

def _stacked_ranks_numpy(bases, add, mul, neg, inv, chunk=50_000):
    N, m, n = bases.shape
    out = np.zeros((N, N), dtype=np.int8)
    if N == 0:
        return out
    if m == 0 or n == 0:
        return out
    iu, ju = np.triu_indices(N)
    for start in range(0, iu.size, chunk):
        ii, jj = iu[start:start + chunk], ju[start:start + chunk]
        B = np.concatenate([bases[ii], bases[jj]], axis=1)  # (b, 2m, n)
        b, r_count, _ = B.shape
        rank = np.zeros(b, dtype=np.intp)
        ar = np.arange(b)
        rows = np.arange(r_count)
        for c in range(n):
            col = B[:, :, c]
            cand = (col != 0) & (rows[None, :] >= rank[:, None])
            has = cand.any(axis=1)
            piv = np.argmax(cand, axis=1)
            sel = ar[has]
            if sel.size == 0:
                continue
            tgt = rank[sel]
            prow = B[sel, piv[sel]].copy()
            B[sel, piv[sel]] = B[sel, tgt]
            prow = mul[inv[prow[np.arange(sel.size), c]][:, None], prow]
            B[sel, tgt] = prow
            sub = B[sel]
            factors = neg[sub[:, :, c]]
            factors[np.arange(sel.size), tgt] = 0
            B[sel] = add[sub, mul[factors[:, :, None], prow[:, None, :]]]
            rank[sel] += 1
        out[ii, jj] = rank
        out[jj, ii] = rank
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _rank_inplace(B, add, mul, neg, inv):
        r_count, n = B.shape
        r = 0
        for c in range(n):
            if r == r_count:
                break
            p = -1
            for i in range(r, r_count):
                if B[i, c] != 0:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for t in range(n):
                    tmp = B[r, t]
                    B[r, t] = B[p, t]
                    B[p, t] = tmp
            s = inv[B[r, c]]
            for t in range(n):
                B[r, t] = mul[s, B[r, t]]
            for i in range(r + 1, r_count):
                fct = B[i, c]
                if fct != 0:
                    nf = neg[fct]
                    for t in range(n):
                        B[i, t] = add[B[i, t], mul[nf, B[r, t]]]
            r += 1
        return r

    @njit(cache=True, parallel=True)
    def _stacked_ranks_numba(bases, add, mul, neg, inv):
        N, m, n = bases.shape
        out = np.zeros((N, N), dtype=np.int8)
        for i in prange(N):
            B = np.empty((2 * m, n), dtype=np.uint8)
            for j in range(i, N):
                for a in range(m):
                    for t in range(n):
                        B[a, t] = bases[i, a, t]
                        B[m + a, t] = bases[j, a, t]
                r = _rank_inplace(B, add, mul, neg, inv)
                out[i, j] = r
                out[j, i] = r
        return out


def stacked_ranks(bases: np.ndarray, field, backend: str | None = None) -> np.ndarray:
    """(N, N) matrix of dim(X_i + X_j) for a stack of (N, m, n) bases."""
    args = (
        np.ascontiguousarray(bases, dtype=np.uint8),
        np.ascontiguousarray(field.add_table),
        np.ascontiguousarray(field.mul_table),
        np.ascontiguousarray(field.neg_table),
        np.ascontiguousarray(field.inv_table),
    )
    if backend_name(backend) == "numba":
        return _stacked_ranks_numba(*args)
    return _stacked_ranks_numpy(*args)


# --------------------------------------------------------------------------
# witness scan: R != P, Q with dis(R) ⊆ dis(P) ∪ dis(Q)

def _witness_scan_numpy(packed, pi, pj):
    N = packed.shape[0]
    first = np.full(pi.size, -1, dtype=np.int64)
    count = np.zeros(pi.size, dtype=np.int64)
    for t in range(pi.size):
        a, b = pi[t], pj[t]
        union = packed[a] | packed[b]
        ok = ~np.any(packed & ~union, axis=1)
        ok[a] = False
        ok[b] = False
        hits = np.flatnonzero(ok)
        count[t] = hits.size
        if hits.size:
            first[t] = hits[0]
    return first, count


if HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _witness_scan_numba(packed, pi, pj):
        N, W = packed.shape
        npairs = pi.size
        first = np.full(npairs, -1, dtype=np.int64)
        count = np.zeros(npairs, dtype=np.int64)
        for t in prange(npairs):
            a = pi[t]
            b = pj[t]
            c = 0
            f = -1
            for r in range(N):
                if r == a or r == b:
                    continue
                good = True
                for w in range(W):
                    if packed[r, w] & ~(packed[a, w] | packed[b, w]):
                        good = False
                        break
                if good:
                    c += 1
                    if f < 0:
                        f = r
            first[t] = f
            count[t] = c
        return first, count


def witness_scan(packed: np.ndarray, pi: np.ndarray, pj: np.ndarray, backend: str | None = None):
    """For each pair (pi[t], pj[t]): first witness index (or -1) and witness count."""
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    pi = np.ascontiguousarray(pi, dtype=np.int64)
    pj = np.ascontiguousarray(pj, dtype=np.int64)
    if backend_name(backend) == "numba":
        return _witness_scan_numba(packed, pi, pj)
    return _witness_scan_numpy(packed, pi, pj)


# --------------------------------------------------------------------------
# all-pairs hop distances, -1 for unreachable

def _all_distances_numpy(dense):
    N = dense.shape[0]
    A = dense.astype(np.float32)
    dist = np.full((N, N), -1, dtype=np.int16)
    reached = np.eye(N, dtype=bool)
    frontier = reached.copy()
    dist[reached] = 0
    d = 0
    while frontier.any():
        d += 1
        nxt = (frontier.astype(np.float32) @ A) > 0
        nxt &= ~reached
        dist[nxt] = d
        reached |= nxt
        frontier = nxt
    return dist


if HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def _all_distances_numba(packed, N):
        # level-synchronous BFS on bitsets: one OR of a packed row per frontier vertex
        W = packed.shape[1]
        dist = np.full((N, N), -1, dtype=np.int16)
        for s in prange(N):
            reached = np.zeros(W, dtype=np.uint64)
            nxt = np.zeros(W, dtype=np.uint64)
            frontier = np.empty(N, dtype=np.int64)
            frontier[0] = s
            fsize = 1
            reached[s >> 6] |= np.uint64(1) << np.uint64(s & 63)
            dist[s, s] = 0
            d = 0
            while fsize > 0:
                d += 1
                for w in range(W):
                    nxt[w] = 0
                for t in range(fsize):
                    v = frontier[t]
                    for w in range(W):
                        nxt[w] |= packed[v, w]
                fsize = 0
                for w in range(W):
                    word = nxt[w] & ~reached[w]
                    reached[w] |= word
                    while word:
                        low = word & (~word + np.uint64(1))
                        b = 0
                        while (low >> np.uint64(b)) != np.uint64(1):
                            b += 1
                        v = w * 64 + b
                        dist[s, v] = d
                        frontier[fsize] = v
                        fsize += 1
                        word ^= low
        return dist


def all_distances(dense: np.ndarray, backend: str | None = None) -> np.ndarray:
    dense = np.asarray(dense, dtype=bool)
    if backend_name(backend) == "numba":
        return _all_distances_numba(pack_rows(dense), dense.shape[0])
    return _all_distances_numpy(dense)
