"""Permutation group utilities: orbits, transversals, Schreier-Sims, closure.

A permutation is an integer array ``p`` with ``i -> p[i]``.  Products read
left to right: ``mul(a, b)`` applies ``a`` first, then ``b``.
"""
from __future__ import annotations

from collections import deque
from math import prod

import numpy as np


def identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return b[a]


def inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.size, dtype=a.dtype)
    return inv


def is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(a.size)))


def is_permutation(a) -> bool:
    a = np.asarray(a)
    return a.ndim == 1 and np.array_equal(np.sort(a), np.arange(a.size))


def perm_key(a: np.ndarray) -> bytes:
    return np.asarray(a, dtype=np.int32).tobytes()


def orbit_transversal(point: int, gens: list[np.ndarray], n: int) -> dict[int, np.ndarray]:
    """Breadth-first orbit of ``point`` with a coset representative per orbit point."""
    reps = {point: identity(n)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        ux = reps[x]
        for g in gens:
            y = int(g[x])
            if y not in reps:
                reps[y] = mul(ux, g)
                queue.append(y)
    return reps


def orbit(point: int, gens: list[np.ndarray]) -> set[int]:
    seen = {point}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims."""

    def __init__(self, gens: list[np.ndarray], n: int):
        self.n = n
        gens = [np.asarray(g, dtype=np.int64) for g in gens if not is_identity(np.asarray(g))]
        self.base: list[int] = []
        self.strong: list[list[np.ndarray]] = []
        self.trans: list[dict[int, np.ndarray]] = []
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._new_level(g)
        for g in gens:
            for i in range(len(self.base)):
                if all(g[b] == b for b in self.base[:i]) and not any(g is s for s in self.strong[i]):
                    self.strong[i].append(g)
        for i in range(len(self.base)):
            self.trans[i] = orbit_transversal(self.base[i], self.strong[i], n)
        self._complete()

    def _new_level(self, g: np.ndarray) -> None:
        moved = np.flatnonzero(g != np.arange(self.n))
        b = int(moved[0])
        self.base.append(b)
        self.strong.append([])
        self.trans.append({b: identity(self.n)})

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.base)):
            x = int(g[self.base[i]])
            u = self.trans[i].get(x)
            if u is None:
                return g, i
            g = mul(g, inverse(u))
        return g, len(self.base)

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restart = None
            for y, uy in list(self.trans[i].items()):
                for s in self.strong[i]:
                    z = int(s[y])
                    h = mul(mul(uy, s), inverse(self.trans[i][z]))
                    if is_identity(h):
                        continue
                    h2, j = self.sift(h, i + 1)
                    if j == len(self.base) and is_identity(h2):
                        continue
                    if j == len(self.base):
                        self._new_level(h2)
                    for level in range(i + 1, j + 1):
                        self.strong[level].append(h2)
                        self.trans[level] = orbit_transversal(self.base[level], self.strong[level], self.n)
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

    def order(self) -> int:
        return prod(len(t) for t in self.trans)

    def contains(self, g: np.ndarray) -> bool:
        h, j = self.sift(np.asarray(g, dtype=np.int64))
        return j == len(self.base) and is_identity(h)

    def elements(self, limit: int = 1_000_000) -> np.ndarray:
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds enumeration limit {limit}")
        return elements_from_transversals([list(t.values()) for t in self.trans], self.n)


def elements_from_transversals(transversals: list[list[np.ndarray]], n: int) -> np.ndarray:
    """All products u_{k-1} ... u_1 u_0 (left applied first), as rows."""
    elems = identity(n)[None, :]
    for reps in reversed(transversals):
        U = np.array(reps, dtype=np.int64)  # (t, n)
        # e then u  ->  u[e]
        elems = U[:, elems].reshape(-1, n)
    return elems


def closure(gens: list[np.ndarray], n: int, limit: int = 1_000_000) -> np.ndarray:
    """Every element of <gens>, by breadth-first multiplication."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    start = identity(n)
    seen = {perm_key(start)}
    out = [start]
    frontier = start[None, :]
    while frontier.size:
        fresh = []
        for g in gens:
            cand = g[frontier]  # frontier element first, then g
            for row in cand:
                k = perm_key(row)
                if k not in seen:
                    seen.add(k)
                    fresh.append(row)
                    if len(seen) > limit:
                        raise ValueError(f"closure exceeds limit {limit}")
        out.extend(fresh)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, n)
    return np.array(out, dtype=np.int64)


def perm_set(rows: np.ndarray) -> set[bytes]:
    return {perm_key(r) for r in rows}
