"""Exact automorphism groups of small graphs.

Colour refinement plus individualization, with an exhaustive backtracking
search at each level of a stabilizer chain.  The group order is the product
of the basic orbit lengths; each orbit is determined completely (every
candidate in the base point's cell is either reached by known generators or
settled by a full search), so the order is exact rather than estimated.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import prod

import numpy as np

from . import perms

DEFAULT_MAX_VERTICES = 200


class CapError(ValueError):
    pass


def _relabel(values: np.ndarray) -> np.ndarray:
    _, inv = np.unique(values, return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


def refine(A: np.ndarray, colors: np.ndarray) -> tuple[np.ndarray, bytes]:
    """Coarsest equitable refinement of ``colors``.

    New colour ids are ranks of (old colour, neighbour counts per colour), so
    the result is invariant under graph isomorphism.  The returned trace
    digests every intermediate signature table; two refinements that an
    automorphism could map onto each other have equal traces.
    """
    h = hashlib.blake2b(digest_size=16)
    N = A.shape[0]
    k = int(colors.max()) + 1 if N else 0
    while True:
        onehot = np.zeros((N, k), dtype=np.int32)
        onehot[np.arange(N), colors] = 1
        sig = np.concatenate([colors[:, None].astype(np.int32), A @ onehot], axis=1)
        uniq, inv, cnt = np.unique(sig, axis=0, return_inverse=True, return_counts=True)
        h.update(uniq.tobytes())
        h.update(cnt.tobytes())
        new = inv.reshape(-1).astype(np.int64)
        if uniq.shape[0] == k:
            return new, h.digest()
        colors, k = new, uniq.shape[0]


def individualize(colors: np.ndarray, v: int) -> np.ndarray:
    tagged = 2 * colors
    tagged[v] += 1
    return _relabel(tagged)


def _first_nontrivial_cell(colors: np.ndarray) -> int | None:
    counts = np.bincount(colors)
    big = np.flatnonzero(counts > 1)
    return int(big[0]) if big.size else None


def _leaf_map(cl: np.ndarray, cr: np.ndarray) -> np.ndarray:
    inv_r = np.empty_like(cr)
    inv_r[cr] = np.arange(cr.size)
    return inv_r[cl]


def _is_automorphism(A: np.ndarray, perm: np.ndarray) -> bool:
    return bool(np.array_equal(A[np.ix_(perm, perm)], A))


class _Searcher:
    def __init__(self, A: np.ndarray):
        self.A = A
        self.nodes = 0

    def extend(self, cl: np.ndarray, cr: np.ndarray) -> np.ndarray | None:
        """Some automorphism mapping the left colouring onto the right one."""
        self.nodes += 1
        cell = _first_nontrivial_cell(cl)
        if cell is None:
            perm = _leaf_map(cl, cr)
            return perm if _is_automorphism(self.A, perm) else None
        v = int(np.flatnonzero(cl == cell)[0])
        cl2, tl = refine(self.A, individualize(cl, v))
        for w in np.flatnonzero(cr == cell):
            cr2, tr = refine(self.A, individualize(cr, int(w)))
            if tl != tr:
                continue
            found = self.extend(cl2, cr2)
            if found is not None:
                return found
        return None


@dataclass
class AutomorphismGroup:
    kind: str
    n: int
    generators: list[np.ndarray]
    order: int
    base: list[int]
    orbit_sizes: list[int]
    method: str = "backtracking-refinement"
    search_nodes: int = 0
    _elements: np.ndarray | None = field(default=None, repr=False)

    def chain(self) -> perms.StabilizerChain:
        return perms.StabilizerChain(self.generators, self.n)

    def elements(self, limit: int = 1_000_000) -> np.ndarray:
        """All group elements; transversals come from the search's own base."""
        if self._elements is None:
            if self.order > limit:
                raise ValueError(f"order {self.order} exceeds enumeration limit {limit}")
            transversals = []
            for i, b in enumerate(self.base):
                fixing = [g for g in self.generators if all(g[c] == c for c in self.base[:i])]
                transversals.append(list(perms.orbit_transversal(b, fixing, self.n).values()))
            elems = perms.elements_from_transversals(transversals, self.n)
            if elems.shape[0] != self.order:
                raise AssertionError("transversal product disagrees with the orbit-size order")
            self._elements = elems
        return self._elements

    def element_set(self, limit: int = 1_000_000) -> set[bytes]:
        return perms.perm_set(self.elements(limit))

    def certificate(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.kind}:{self.n}:{self.order}:{self.base}:{self.orbit_sizes}".encode())
        for key in sorted(perms.perm_key(g) for g in self.generators):
            h.update(key)
        return h.hexdigest()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": self.n,
            "order": self.order,
            "generators": len(self.generators),
            "base": self.base,
            "orbit_sizes": self.orbit_sizes,
            "method": self.method,
            "certificate": self.certificate(),
        }


def automorphism_group(dense: np.ndarray, kind: str = "graph", max_vertices: int = DEFAULT_MAX_VERTICES) -> AutomorphismGroup:
    """Exact automorphism group of a simple graph given by a boolean matrix."""
    A = np.asarray(dense, dtype=np.int32)
    N = A.shape[0]
    if N > max_vertices:
        raise CapError(f"graph has {N} vertices, automorphism search cap is {max_vertices}")
    if N == 0:
        return AutomorphismGroup(kind, 0, [], 1, [], [])
    search = _Searcher(A)

    colorings = []
    traces = []
    c, t = refine(A, np.zeros(N, dtype=np.int64))
    colorings.append(c)
    base: list[int] = []
    cells: list[np.ndarray] = []
    while (cell := _first_nontrivial_cell(c)) is not None:
        members = np.flatnonzero(c == cell)
        v = int(members[0])
        base.append(v)
        cells.append(members)
        c, t = refine(A, individualize(c, v))
        colorings.append(c)
        traces.append(t)
    if not _is_automorphism(A, np.arange(N)):
        raise AssertionError("identity failed the automorphism check")

    gens: list[np.ndarray] = []
    orbit_sizes = [0] * len(base)
    for i in range(len(base) - 1, -1, -1):
        level_gens = list(gens)
        orb = perms.orbit(base[i], level_gens)
        excluded: set[int] = set()
        for cand in cells[i].tolist():
            if cand in orb or cand in excluded:
                continue
            cr, tr = refine(A, individualize(colorings[i], cand))
            found = None
            if tr == traces[i]:
                found = search.extend(colorings[i + 1], cr)
            if found is not None:
                gens.append(found)
                level_gens.append(found)
                orb = perms.orbit(base[i], level_gens)
            else:
                excluded |= perms.orbit(cand, level_gens)
        orbit_sizes[i] = len(orb)

    return AutomorphismGroup(
        kind=kind,
        n=N,
        generators=gens,
        order=prod(orbit_sizes),
        base=base,
        orbit_sizes=orbit_sizes,
        search_nodes=search.nodes,
    )
