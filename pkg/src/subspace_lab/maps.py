"""Maps of the Grassmannian induced by semilinear bijections and dualities,
and the group-level comparisons between the two graphs.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from math import factorial, prod

import numpy as np

from . import _kernels, perms
from .automorphism import DEFAULT_MAX_VERTICES, AutomorphismGroup, automorphism_group
from .field import FieldSpec, frobenius_orbit
from .grassmann import Grassmannian, annihilator
from .graphs import Graph, build_distant_graph, build_grassmann_graph
from .linalg import Matrix, invert, matmul_array, rref_array
from .report import VerificationReport

ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class SemilinearMap:
    """x ↦ σ(x)·M on row vectors; with ``dual`` the subspace is first sent to X^⊥."""

    matrix: Matrix
    automorphism: int = 0
    dual: bool = False

    def __post_init__(self):
        if invert(self.matrix) is None:
            raise ValueError("semilinear map needs an invertible matrix")
        if not 0 <= self.automorphism < self.matrix.field.k:
            raise ValueError(f"automorphism index {self.automorphism} out of range")

    def then(self, other: "SemilinearMap") -> "SemilinearMap":
        """Apply ``self`` first, then ``other`` (vector maps only)."""
        if self.dual or other.dual:
            raise ValueError("composition is defined here for vector maps only")
        f = self.matrix.field
        sigma2 = frobenius_orbit(f)[other.automorphism]
        M = matmul_array(f, sigma2[self.matrix.entries], other.matrix.entries)
        return SemilinearMap(Matrix._wrap(f, M), (self.automorphism + other.automorphism) % f.k)


@dataclass(frozen=True)
class InducedMap:
    permutation: np.ndarray
    source: object = "abstract"

    def then(self, other: "InducedMap") -> "InducedMap":
        return InducedMap(perms.mul(self.permutation, other.permutation), "composite")


def _annihilator_bases(G: Grassmannian) -> np.ndarray:
    cached = G.__dict__.get("_annihilator_bases")
    if cached is None:
        cached = np.stack([annihilator(X).basis.entries for X in G.elements]) if len(G) else G.bases
        cached.setflags(write=False)
        G.__dict__["_annihilator_bases"] = cached
    return cached


def induced_map(f: SemilinearMap, G: Grassmannian) -> InducedMap:
    """Permutation of G sending index(X) to index(X^f) (or index((X^⊥)^f))."""
    field = G.field
    if f.matrix.field != field or f.matrix.rows != G.n:
        raise ValueError("map does not act on this Grassmannian's space")
    bases = _annihilator_bases(G) if f.dual else G.bases
    sigma = frobenius_orbit(field)[f.automorphism]
    imaged = sigma[bases]
    N, m, n = bases.shape
    flat = matmul_array(field, imaged.reshape(N * m, n), f.matrix.entries).reshape(N, m, n)
    perm = np.empty(N, dtype=np.int64)
    for i in range(N):
        R, piv = rref_array(field, flat[i])
        perm[i] = G._index[bytes([m, n]) + R[: len(piv)].tobytes()]
    return InducedMap(perm, f)


def is_graph_isomorphism(pi: InducedMap | np.ndarray, g: Graph) -> bool:
    """edge(v, w) ⇔ edge(π v, π w) for all v, w."""
    p = pi.permutation if isinstance(pi, InducedMap) else np.asarray(pi)
    if p.size != g.vertex_count or not perms.is_permutation(p):
        return False
    A = g.dense
    return bool(np.array_equal(A[np.ix_(p, p)], A))


def automorphisms(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> AutomorphismGroup:
    return automorphism_group(g.dense, g.kind, max_vertices)


# --------------------------------------------------------------------------
# generating sets and order formulas

def gl_generators(field: FieldSpec, n: int) -> list[Matrix]:
    """Transvections I + E_ij (i ≠ j) and diag(g, 1, ..., 1), g primitive.

    The transvections generate SL(n, q); the diagonal matrix has determinant
    g, so together they generate GL(n, q).
    """
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                a = np.eye(n, dtype=np.uint8)
                a[i, j] = 1
                gens.append(Matrix._wrap(field, a))
    if field.q > 2:
        d = np.eye(n, dtype=np.uint8)
        d[0, 0] = field.generator
        gens.append(Matrix._wrap(field, d))
    return gens


def semilinear_generators(field: FieldSpec, n: int, include_duality: bool = True) -> list[SemilinearMap]:
    ident = Matrix.identity(field, n)
    maps = [SemilinearMap(M) for M in gl_generators(field, n)]
    maps += [SemilinearMap(ident, j) for j in range(1, field.k)]
    if include_duality:
        maps.append(SemilinearMap(ident, 0, True))
    return maps


def random_semilinear(field: FieldSpec, n: int, rng: np.random.Generator, allow_dual: bool = True) -> SemilinearMap:
    while True:
        M = Matrix._wrap(field, rng.integers(0, field.q, size=(n, n)).astype(np.uint8))
        if invert(M) is not None:
            break
    sigma = int(rng.integers(0, field.k))
    dual = bool(rng.integers(0, 2)) if allow_dual else False
    return SemilinearMap(M, sigma, dual)


def gl_order(n: int, q: int) -> int:
    return prod(q**n - q**i for i in range(n))


def expected_aut_order(q: int, p: int, m: int) -> int:
    """|Aut| of the distant graph from the semilinear classification.

    m = 1: complete graph on q+1 vertices.  m >= 2: semilinear maps modulo
    scalars, doubled by duality: 2 · |GL(2m, q)| / (q - 1) · log_p(q).
    """
    if m == 0:
        return 1
    if m == 1:
        return factorial(q + 1)
    k = round(np.log(q) / np.log(p))
    return 2 * gl_order(2 * m, q) // (q - 1) * k


# --------------------------------------------------------------------------
# verifications

def verify_semilinear_isomorphisms(
    G: Grassmannian, *, samples: int = 100, seed: int = 0, backend: str | None = None
) -> VerificationReport:
    """Every induced map (generators, their dual versions, random elements)
    preserves both the distant and the Grassmann graph."""
    t0 = time.perf_counter()
    report = VerificationReport("semilinear-isomorphisms", G.q, G.m, seed=seed)
    graphs = [build_distant_graph(G, backend), build_grassmann_graph(G, backend)]
    gens = semilinear_generators(G.field, G.n, include_duality=True)
    maps = list(gens) + [SemilinearMap(s.matrix, s.automorphism, True) for s in gens if not s.dual]
    rng = np.random.default_rng(seed)
    maps += [random_semilinear(G.field, G.n, rng) for _ in range(samples)]
    for idx, f in enumerate(maps):
        pi = induced_map(f, G)
        for g in graphs:
            report.pairs_checked += g.vertex_count**2
            if not is_graph_isomorphism(pi, g):
                report.failures.append(
                    {"map": idx, "graph": g.kind, "matrix": f.matrix.tolist(), "automorphism": f.automorphism, "dual": f.dual}
                )
                break
        if report.failures:
            break
    report.details.update(maps_checked=len(maps), generators=len(gens), random_samples=samples)
    report.elapsed = time.perf_counter() - t0
    return report


def _adjacency_via_distant_matrix(G: Grassmannian, distant: Graph, backend: str | None) -> np.ndarray:
    N = len(G)
    i, j = np.triu_indices(N, k=1)
    first, _ = _kernels.witness_scan(distant.adjacency, i, j, backend)
    H = np.zeros((N, N), dtype=bool)
    H[i, j] = first >= 0
    return H | H.T


def verify_iso_transfer(
    G: Grassmannian, *, max_vertices: int = DEFAULT_MAX_VERTICES, backend: str | None = None
) -> VerificationReport:
    """Aut(distant graph) = Aut(Grassmann graph) as permutation sets.

    Small groups are compared element by element.  Larger ones are compared
    by order plus mutual generator containment, which determines equality.
    The witness relation is also checked to be invariant under every distant
    automorphism (all elements when enumerable, else generators).
    """
    t0 = time.perf_counter()
    report = VerificationReport("iso-transfer", G.q, G.m)
    distant = build_distant_graph(G, backend)
    grass = build_grassmann_graph(G, backend)
    aut_d = automorphisms(distant, max_vertices)
    aut_g = automorphisms(grass, max_vertices)
    expected = expected_aut_order(G.q, G.field.p, G.m)
    report.details.update(
        distant=aut_d.to_json(), grassmann=aut_g.to_json(), formula_order=expected
    )
    if aut_d.order != expected:
        report.failures.append({"check": "distant order vs formula", "searched": aut_d.order, "formula": expected})
    if aut_g.order != expected:
        report.failures.append({"check": "grassmann order vs formula", "searched": aut_g.order, "formula": expected})

    if max(aut_d.order, aut_g.order) <= ENUMERATION_LIMIT:
        ed, eg = aut_d.elements(), aut_g.elements()
        equal = perms.perm_set(ed) == perms.perm_set(eg)
        report.pairs_checked += ed.shape[0] + eg.shape[0]
        report.details["comparison"] = "elementwise"
        transport = ed
    else:
        equal = aut_d.order == aut_g.order and all(is_graph_isomorphism(p, grass) for p in aut_d.generators) and all(
            is_graph_isomorphism(p, distant) for p in aut_g.generators
        )
        report.pairs_checked += len(aut_d.generators) + len(aut_g.generators)
        report.details["comparison"] = "order and generators"
        transport = np.array(aut_d.generators).reshape(-1, len(G))
    if not equal:
        report.failures.append({"check": "Aut(distant) == Aut(grassmann)"})

    if G.m >= 1:
        H = _adjacency_via_distant_matrix(G, distant, backend)
        bad = next((t for t, p in enumerate(transport) if not np.array_equal(H[np.ix_(p, p)], H)), None)
        report.details["witness_relation_transported"] = int(transport.shape[0])
        if bad is not None:
            report.failures.append({"check": "witness relation invariance", "element": int(bad)})
        if not np.array_equal(H, grass.dense):
            report.failures.append({"check": "witness relation equals Grassmann adjacency"})
    report.elapsed = time.perf_counter() - t0
    return report


def verify_chow(
    G: Grassmannian, *, max_vertices: int = DEFAULT_MAX_VERTICES, backend: str | None = None
) -> VerificationReport:
    """The group generated by induced semilinear maps and the duality equals
    Aut(distant graph)."""
    if G.n < 4:
        raise ValueError("the semilinear classification check needs dim V >= 4")
    t0 = time.perf_counter()
    report = VerificationReport("chow", G.q, G.m)
    distant = build_distant_graph(G, backend)
    aut = automorphisms(distant, max_vertices)
    gens = [induced_map(f, G).permutation for f in semilinear_generators(G.field, G.n)]
    not_aut = [i for i, p in enumerate(gens) if not is_graph_isomorphism(p, distant)]
    if not_aut:
        report.failures.append({"check": "induced generators are automorphisms", "bad": not_aut})
    if aut.order <= ENUMERATION_LIMIT:
        H = perms.closure(gens, len(G), limit=ENUMERATION_LIMIT)
        equal = perms.perm_set(H) == aut.element_set()
        report.details.update(comparison="elementwise", induced_order=int(H.shape[0]))
        report.pairs_checked = int(H.shape[0])
    else:
        order = perms.StabilizerChain(gens, len(G)).order()
        equal = order == aut.order and not not_aut
        report.details.update(comparison="order and containment", induced_order=order)
        report.pairs_checked = len(gens)
    report.details.update(aut_order=aut.order, generators=len(gens))
    if not equal:
        report.failures.append({"check": "induced group equals Aut(distant)", "aut_order": aut.order})
    report.elapsed = time.perf_counter() - t0
    return report


def verify_complete_line(G: Grassmannian, backend: str | None = None) -> VerificationReport:
    """For dim V = 2 the distant graph is complete on q+1 vertices."""
    if G.m != 1:
        raise ValueError("only meaningful for m = 1")
    t0 = time.perf_counter()
    report = VerificationReport("complete-line", G.q, G.m)
    D = build_distant_graph(G, backend).dense
    N = len(G)
    report.pairs_checked = N * (N - 1) // 2
    complete = np.array_equal(D, ~np.eye(N, dtype=bool))
    if N != G.q + 1 or not complete:
        report.failures.append({"vertices": N, "complete": bool(complete)})
    report.details.update(vertices=N, field_order_read_off=N - 1)
    report.elapsed = time.perf_counter() - t0
    return report
