"""The projective line over the matrix ring M_m(F_q).

A point is the left GL_m-orbit of a unimodular pair (A, B).  Over a field,
(A, B) is unimodular iff the block [A | B] has rank m, which is also when it
extends to an invertible 2m x 2m matrix; the canonical representative of the
orbit is the RREF of [A | B].
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from .field import FieldSpec
from .grassmann import Grassmannian, Subspace, enumerate_grassmannian
from .linalg import Matrix, invert, rref_array
from .report import VerificationReport
from .theorems import complement_matrix

BRUTE_FORCE_LIMIT = 300_000


@dataclass(frozen=True)
class RingPoint:
    A: Matrix
    B: Matrix
    canonical: Matrix

    @property
    def m(self) -> int:
        return self.A.rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingPoint):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def subspace(self) -> Subspace:
        """Row space of [A | B] in F_q^{2m}."""
        R = self.canonical
        piv = tuple(int(np.flatnonzero(r)[0]) for r in R.entries)
        return Subspace(R, piv)


def ring_point(A: Matrix, B: Matrix) -> RingPoint:
    if A.field != B.field:
        raise ValueError("A and B over different fields")
    if A.rows != A.cols or B.shape != A.shape:
        raise ValueError("a ring point needs two square matrices of equal size")
    m = A.rows
    R, piv = rref_array(A.field, np.hstack([A.entries, B.entries]))
    if len(piv) != m:
        raise ValueError(f"pair is not unimodular: rank [A|B] = {len(piv)} < {m}")
    return RingPoint(A, B, Matrix._wrap(A.field, R))


def split(f: FieldSpec, block: np.ndarray) -> tuple[Matrix, Matrix]:
    m = block.shape[0]
    return Matrix._wrap(f, block[:, :m]), Matrix._wrap(f, block[:, m:])


def ring_distant(x: RingPoint, y: RingPoint) -> bool:
    """Distant iff the stacked 2m x 2m matrix is invertible."""
    if x.m != y.m or x.A.field != y.A.field:
        raise ValueError("points on different projective lines")
    return invert(x.canonical.stack(y.canonical)) is not None


def basis_completion(x: RingPoint) -> Matrix | None:
    """An invertible 2m x 2m matrix whose first m rows are [A | B], if one exists.

    Greedy extension by standard basis vectors; succeeds exactly for
    unimodular pairs.
    """
    f = x.A.field
    rows = [r for r in np.hstack([x.A.entries, x.B.entries])]
    n = 2 * x.m
    _, piv = rref_array(f, np.array(rows))
    if len(piv) < x.m:
        return None
    for e in np.eye(n, dtype=np.uint8):
        if len(rows) == n:
            break
        _, p2 = rref_array(f, np.array(rows + [e]))
        if len(p2) == len(rows) + 1:
            rows.append(e)
    M = Matrix._wrap(f, np.array(rows))
    return M if invert(M) is not None else None


def enumerate_ring_points(f: FieldSpec, m: int, limit: int = BRUTE_FORCE_LIMIT) -> set[Matrix]:
    """Canonical forms of every unimodular pair, by brute force over all pairs."""
    total = f.q ** (2 * m * m)
    if total > limit:
        raise ValueError(f"{total} matrix pairs exceed the brute-force limit {limit}")
    out: set[Matrix] = set()
    for entries in itertools.product(range(f.q), repeat=2 * m * m):
        block = np.array(entries, dtype=np.uint8).reshape(m, 2 * m)
        R, piv = rref_array(f, block)
        if len(piv) == m:
            out.add(Matrix._wrap(f, R))
    return out


def verify_ringline_iso(f: FieldSpec, m: int, G: Grassmannian | None = None) -> VerificationReport:
    """Ring points ↔ Grassmannian is a bijection preserving distance both ways."""
    t0 = time.perf_counter()
    G = G if G is not None else enumerate_grassmannian(f, m)
    report = VerificationReport("ringline-iso", f.q, m)
    points = []
    for X in G:
        A, B = split(f, X.basis.entries)
        points.append(ring_point(A, B))
    images = [G.index_of(pt.subspace()) for pt in points]
    bijective = sorted(images) == list(range(len(G))) and len(set(points)) == len(G)
    report.details["points"] = len(points)
    if not bijective:
        report.failures.append({"check": "lift is a bijection onto G"})
    if f.q ** (2 * m * m) <= BRUTE_FORCE_LIMIT:
        brute = enumerate_ring_points(f, m)
        report.details["brute_force_points"] = len(brute)
        if brute != {pt.canonical for pt in points}:
            report.failures.append({"check": "brute-force unimodular pairs match G", "brute": len(brute)})
    C = complement_matrix(G)
    N = len(points)
    mismatch = None
    for i, j in itertools.combinations(range(N), 2):
        report.pairs_checked += 1
        rd = ring_distant(points[i], points[j])
        if rd != bool(C[images[i], images[j]]):
            mismatch = {"pair": [i, j], "ring_distant": rd, "P": G[i].to_json(), "Q": G[j].to_json()}
            break
    if mismatch is not None:
        report.failures.append(mismatch)
    report.elapsed = time.perf_counter() - t0
    return report
