"""Exhaustive checks of the adjacency characterization, the distance formula,
the small-dimension shortcuts and the pencil structure.

Every sweep returns a :class:`VerificationReport`; a failure carries both
subspaces as JSON so it can be replayed.
"""
from __future__ import annotations

import time
from collections import Counter

import numpy as np

from . import _kernels
from .grassmann import (
    Grassmannian,
    Subspace,
    enumerate_subspaces,
    is_complement,
    is_subspace,
    join,
    join_dim,
    meet,
    span,
)
from .graphs import Graph, all_distances, build_distant_graph, build_grassmann_graph
from .report import VerificationReport

DEFAULT_SAMPLE = 100_000


def is_adjacent(P: Subspace, Q: Subspace) -> bool:
    """dim((P+Q)/P) = dim((P+Q)/Q) = 1."""
    if P.dim != Q.dim:
        return False
    return join_dim(P, Q) - P.dim == 1


def adjacency_via_distant(p: int, q: int, G: Grassmannian, distant: Graph) -> tuple[bool, int | None]:
    """Search for R ≠ P, Q such that every complement of R is a complement of P or Q.

    Returns the first such R in index order.
    """
    D = distant.dense
    allowed = D[p] | D[q]
    for r in range(len(G)):
        if r == p or r == q:
            continue
        if not np.any(D[r] & ~allowed):
            return True, r
    return False, None


def witness_R(P: Subspace, Q: Subspace) -> Subspace:
    """The third pencil point (P∩Q) + <p + q'>.

    ``p`` is the first canonical basis row of P outside Q and ``q'`` the
    first of Q outside P.
    """
    if not is_adjacent(P, Q):
        raise ValueError("witness_R needs adjacent subspaces")
    f = P.field
    p_vec = next(r for r in P.basis.entries if not Q.contains_vector(r))
    q_vec = next(r for r in Q.basis.entries if not P.contains_vector(r))
    s = f.add_table[p_vec, q_vec]
    return join(meet(P, Q), span(f, P.ambient_dim, [s]))


def trivial_case_adjacency(n: int, X: Subspace, Y: Subspace) -> bool:
    """Adjacency read off the distant relation when dim V is 0, 2 or 4."""
    if n == 0:
        return False
    if n == 2:
        return is_complement(X, Y)
    if n == 4:
        return X != Y and not is_complement(X, Y)
    raise ValueError("trivial_case_adjacency only covers dim V in {0, 2, 4}")


# --------------------------------------------------------------------------
# helpers

def _pairs(N: int, sample: int, full_sweep: bool, seed: int) -> tuple[np.ndarray, np.ndarray, bool]:
    """Unordered pairs i < j in lexicographic order, or a seeded sample."""
    total = N * (N - 1) // 2
    if full_sweep or total <= sample:
        i, j = np.triu_indices(N, k=1)
        return i.astype(np.int64), j.astype(np.int64), False
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(total, size=sample, replace=False))
    # unrank pair index t -> (i, j) in row-major upper-triangle order
    starts = np.cumsum([0] + [N - 1 - i for i in range(N - 1)])
    i = np.searchsorted(starts, picks, side="right") - 1
    j = picks - starts[i] + i + 1
    return i.astype(np.int64), j.astype(np.int64), True


def complement_matrix(G: Grassmannian) -> np.ndarray:
    """Complementarity for all pairs via subspace-level join and meet.

    Independent of the kernel that builds :class:`Graph` adjacency.
    """
    cache = G.__dict__.get("_complement_matrix")
    if cache is not None:
        return cache
    N = len(G)
    C = np.zeros((N, N), dtype=bool)
    for i in range(N):
        for j in range(i, N):
            C[i, j] = C[j, i] = is_complement(G[i], G[j])
    C.setflags(write=False)
    G.__dict__["_complement_matrix"] = C
    return C


def _failure(G: Grassmannian, i: int, j: int, **extra) -> dict:
    out = {"pair": [int(i), int(j)], "P": G[int(i)].to_json(), "Q": G[int(j)].to_json()}
    out.update(extra)
    return out


# --------------------------------------------------------------------------
# sweeps

def verify_adjacency_characterization(
    G: Grassmannian,
    distant: Graph | None = None,
    *,
    seed: int = 0,
    sample: int = DEFAULT_SAMPLE,
    full_sweep: bool = False,
    backend: str | None = None,
) -> VerificationReport:
    """Adjacent ⇔ a witness R exists, for every (or a seeded sample of) pair."""
    t0 = time.perf_counter()
    report = VerificationReport("adjacency-characterization", G.q, G.m, seed=seed)
    if G.m == 0:
        report.details["note"] = "dim V = 0: single vertex, no pairs"
        report.elapsed = time.perf_counter() - t0
        return report
    distant = distant if distant is not None else build_distant_graph(G, backend)
    pi, pj, sampled = _pairs(len(G), sample, full_sweep, seed)
    first, count = _kernels.witness_scan(distant.adjacency, pi, pj, backend)
    hist: Counter = Counter()
    for t in range(pi.size):
        i, j = int(pi[t]), int(pj[t])
        adj = is_adjacent(G[i], G[j])
        holds = bool(first[t] >= 0)
        if adj:
            hist[int(count[t])] += 1
        if adj != holds:
            report.failures.append(
                _failure(G, i, j, adjacent=adj, witness=int(first[t]) if holds else None)
            )
            report.pairs_checked = t + 1
            break
    else:
        report.pairs_checked = int(pi.size)
    report.witness_stats = dict(sorted(hist.items()))
    report.details.update(
        sampled=sampled,
        total_pairs=len(G) * (len(G) - 1) // 2,
        adjacent_pairs=sum(hist.values()),
        backend=_kernels.backend_name(backend),
    )
    report.elapsed = time.perf_counter() - t0
    return report


def verify_witnesses(G: Grassmannian, distant: Graph | None = None, backend: str | None = None) -> VerificationReport:
    """For every adjacent pair, the constructed R satisfies both witness conditions.

    The complement relation is recomputed at subspace level, so this does not
    trust the graph kernel.  Also records whether any witness lies outside the
    pencil through P and Q.
    """
    t0 = time.perf_counter()
    report = VerificationReport("witness-soundness", G.q, G.m)
    if G.m == 0:
        report.elapsed = time.perf_counter() - t0
        return report
    C = complement_matrix(G)
    grass = build_grassmann_graph(G, backend)
    distant = distant if distant is not None else build_distant_graph(G, backend)
    N = len(G)
    pi, pj = [], []
    for i in range(N):
        for j in range(i + 1, N):
            if is_adjacent(G[i], G[j]):
                pi.append(i)
                pj.append(j)
    pi_a, pj_a = np.array(pi, dtype=np.int64), np.array(pj, dtype=np.int64)
    _, counts = _kernels.witness_scan(distant.adjacency, pi_a, pj_a, backend)
    non_pencil = 0
    hist: Counter = Counter()
    for t, (i, j) in enumerate(zip(pi, pj)):
        P, Q = G[i], G[j]
        R = witness_R(P, Q)
        r = G.index_of(R)
        M, Nsp = meet(P, Q), join(P, Q)
        in_pencil = is_subspace(M, R) and is_subspace(R, Nsp) and M != R and R != Nsp
        cond4 = r != i and r != j
        cond5 = bool(np.all(~C[r] | C[i] | C[j]))
        if not (cond4 and cond5 and in_pencil):
            report.failures.append(
                _failure(G, i, j, R=R.to_json(), distinct=cond4, complements_covered=cond5, in_pencil=in_pencil)
            )
            break
        # pencil members other than P, Q among common Grassmann neighbours
        common = np.flatnonzero(grass.dense[i] & grass.dense[j])
        members = [int(x) for x in common if is_subspace(M, G[int(x)]) and is_subspace(G[int(x)], Nsp)]
        pencil_witnesses = sum(bool(np.all(~C[x] | C[i] | C[j])) for x in members)
        if pencil_witnesses != len(members):
            report.failures.append(_failure(G, i, j, note="a pencil member is not a witness"))
            break
        non_pencil += int(counts[t]) - pencil_witnesses
        hist[int(counts[t])] += 1
        report.pairs_checked += 1
    report.witness_stats = dict(sorted(hist.items()))
    report.details.update(adjacent_pairs=len(pi), non_pencil_witnesses=non_pencil)
    report.elapsed = time.perf_counter() - t0
    return report


def verify_distance_formula(
    G: Grassmannian,
    grassmann: Graph | None = None,
    *,
    seed: int = 0,
    sample: int = DEFAULT_SAMPLE,
    full_sweep: bool = False,
    backend: str | None = None,
) -> VerificationReport:
    """Graph distance = dim((X+Y)/X) = dim(X/(X∩Y)) for every pair."""
    t0 = time.perf_counter()
    report = VerificationReport("distance-formula", G.q, G.m, seed=seed)
    grassmann = grassmann if grassmann is not None else build_grassmann_graph(G, backend)
    dist = all_distances(grassmann, backend)
    N = len(G)
    total = N * (N + 1) // 2
    if full_sweep or total <= sample:
        pi, pj = np.triu_indices(N)
        sampled = False
    else:
        pi, pj, sampled = _pairs(N, sample, False, seed)
    classes: Counter = Counter()
    for i, j in zip(pi.tolist(), pj.tolist()):
        X, Y = G[i], G[j]
        d = int(dist[i, j])
        via_join = join_dim(X, Y) - X.dim
        via_meet = X.dim - meet(X, Y).dim
        report.pairs_checked += 1
        if not d == via_join == via_meet:
            report.failures.append(_failure(G, i, j, distance=d, via_join=via_join, via_meet=via_meet))
            break
    for d in dist[0].tolist():
        classes[d] += 1
    report.details.update(
        sampled=sampled,
        distance_classes_from_vertex_0={str(k): v for k, v in sorted(classes.items())},
        backend=_kernels.backend_name(backend),
    )
    report.elapsed = time.perf_counter() - t0
    return report


def verify_trivial_cases(G: Grassmannian) -> VerificationReport:
    """The dim V ∈ {0, 2, 4} shortcuts agree with adjacency on all pairs."""
    t0 = time.perf_counter()
    report = VerificationReport("trivial-dimensions", G.q, G.m)
    if G.n not in (0, 2, 4):
        raise ValueError("the shortcut only exists for dim V in {0, 2, 4}")
    N = len(G)
    for i in range(N):
        for j in range(i, N):
            X, Y = G[i], G[j]
            adj = is_adjacent(X, Y) if G.n else False
            report.pairs_checked += 1
            if trivial_case_adjacency(G.n, X, Y) != adj:
                report.failures.append(_failure(G, i, j, adjacent=adj))
                report.elapsed = time.perf_counter() - t0
                return report
    report.elapsed = time.perf_counter() - t0
    return report


def verify_pencils(G: Grassmannian, backend: str | None = None) -> VerificationReport:
    """Every pencil has q+1 members; adjacent pairs lie on exactly one pencil,
    namely the one spanned by their meet and join; other pairs on none."""
    t0 = time.perf_counter()
    report = VerificationReport("pencils", G.q, G.m)
    m, n, N = G.m, G.n, len(G)
    if m == 0:
        report.elapsed = time.perf_counter() - t0
        return report
    lows = enumerate_subspaces(G.field, n, m - 1)
    highs = enumerate_subspaces(G.field, n, m + 1)
    above = [frozenset(i for i, X in enumerate(G) if is_subspace(M, X)) for M in lows]
    below = [frozenset(i for i, X in enumerate(G) if is_subspace(X, Nsp)) for Nsp in highs]
    pencils: list[tuple[int, int, frozenset]] = []
    sizes: Counter = Counter()
    for a, M in enumerate(lows):
        for b, Nsp in enumerate(highs):
            if not is_subspace(M, Nsp):
                continue
            members = above[a] & below[b]
            sizes[len(members)] += 1
            pencils.append((a, b, members))
            if len(members) != G.q + 1:
                report.failures.append({"M": M.to_json(), "N": Nsp.to_json(), "size": len(members)})
    on_line = np.zeros((N, N), dtype=np.int64)
    line_of: dict[tuple[int, int], tuple[int, int]] = {}
    for a, b, members in pencils:
        idx = sorted(members)
        for s, x in enumerate(idx):
            for y in idx[s + 1:]:
                on_line[x, y] += 1
                line_of[(x, y)] = (a, b)
    low_index = {M.key(): t for t, M in enumerate(lows)}
    high_index = {Nsp.key(): t for t, Nsp in enumerate(highs)}
    for i in range(N):
        for j in range(i + 1, N):
            report.pairs_checked += 1
            adj = is_adjacent(G[i], G[j])
            k = int(on_line[i, j])
            if adj:
                expected = (low_index[meet(G[i], G[j]).key()], high_index[join(G[i], G[j]).key()])
                if k != 1 or line_of[(i, j)] != expected:
                    report.failures.append(_failure(G, i, j, pencils=k))
            elif k != 0:
                report.failures.append(_failure(G, i, j, pencils=k, adjacent=False))
            if len(report.failures) > 0:
                break
        if report.failures:
            break
    report.details.update(pencil_count=len(pencils), pencil_sizes={str(k): v for k, v in sorted(sizes.items())})
    report.elapsed = time.perf_counter() - t0
    return report
