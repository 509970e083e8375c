"""Distant graph and Grassmann graph on an enumerated Grassmannian."""
from __future__ import annotations

import json
from collections import deque
from functools import cached_property

import numpy as np

from . import _kernels
from .grassmann import Grassmannian, Subspace


class Graph:
    """Undirected graph on Grassmannian indices with packed adjacency rows."""

    def __init__(self, grassmannian: Grassmannian | None, kind: str, dense: np.ndarray):
        dense = np.asarray(dense, dtype=bool)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(dense, dense.T):
            raise ValueError("adjacency must be symmetric")
        self.grassmannian = grassmannian
        self.kind = kind
        self.vertex_count = dense.shape[0]
        self.adjacency = _kernels.pack_rows(dense)
        self.adjacency.setflags(write=False)

    @cached_property
    def dense(self) -> np.ndarray:
        d = _kernels.unpack_rows(self.adjacency, self.vertex_count)
        d.setflags(write=False)
        return d

    def __len__(self) -> int:
        return self.vertex_count

    def has_edge(self, v: int, w: int) -> bool:
        return bool((int(self.adjacency[v, w >> 6]) >> (w & 63)) & 1)

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.dense[v])

    def degrees(self) -> np.ndarray:
        return self.dense.sum(axis=1)

    def regular_degree(self) -> int | None:
        deg = self.degrees()
        if deg.size and np.all(deg == deg[0]):
            return int(deg[0])
        return None

    def edges(self):
        iu, ju = np.nonzero(np.triu(self.dense))
        return list(zip(iu.tolist(), ju.tolist()))

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def has_loops(self) -> bool:
        return bool(np.diag(self.dense).any())


def _join_dims(G: Grassmannian, backend: str | None = None) -> np.ndarray:
    cache = G.__dict__.setdefault("_join_dims", {})
    key = _kernels.backend_name(backend)
    if key not in cache:
        cache[key] = _kernels.stacked_ranks(G.bases, G.field, backend)
    return cache[key]


def build_distant_graph(G: Grassmannian, backend: str | None = None) -> Graph:
    """Edge {X, Y} iff X ⊕ Y = V."""
    if G.m == 0:
        # the zero space is its own complement in the zero space
        return Graph(G, "distant", np.ones((1, 1), dtype=bool))
    return Graph(G, "distant", _join_dims(G, backend) == G.n)


def build_grassmann_graph(G: Grassmannian, backend: str | None = None) -> Graph:
    """Edge {X, Y} iff dim(X + Y) = m + 1."""
    if G.m == 0:
        return Graph(G, "grassmann", np.zeros((1, 1), dtype=bool))
    return Graph(G, "grassmann", _join_dims(G, backend) == G.m + 1)


UNREACHABLE = -1


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable vertices get -1."""
    if not 0 <= source < g.vertex_count:
        raise IndexError(f"vertex {source} out of range")
    dist = np.full(g.vertex_count, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    dense = g.dense
    while queue:
        v = queue.popleft()
        for w in np.flatnonzero(dense[v] & (dist < 0)):
            dist[w] = dist[v] + 1
            queue.append(int(w))
    return dist


def all_distances(g: Graph, backend: str | None = None) -> np.ndarray:
    return _kernels.all_distances(g.dense, backend)


def diameter(g: Graph, backend: str | None = None) -> int | None:
    """Largest eccentricity, or ``None`` if the graph is disconnected."""
    if g.vertex_count == 0:
        return 0
    dist = all_distances(g, backend)
    if (dist < 0).any():
        return None
    return int(dist.max())


def components(g: Graph) -> int:
    seen = np.zeros(g.vertex_count, dtype=bool)
    count = 0
    for v in range(g.vertex_count):
        if not seen[v]:
            count += 1
            seen |= bfs_distances(g, v) >= 0
    return count


def stats(g: Graph, backend: str | None = None) -> dict:
    G = g.grassmannian
    d = diameter(g, backend)
    return {
        "q": G.q if G is not None else None,
        "m": G.m if G is not None else None,
        "vertices": g.vertex_count,
        "kind": g.kind,
        "regular_degree": g.regular_degree(),
        "diameter": d if d is not None else "disconnected",
        "components": components(g),
    }


# --------------------------------------------------------------------------
# export

def to_graph6(g: Graph) -> bytes:
    """Standard graph6 encoding (no header, no trailing newline).

    Loops are not representable and are dropped.
    """
    n = g.vertex_count
    if n < 63:
        out = [n + 63]
    elif n < 258048:
        out = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise ValueError("graph6 small/medium form supports at most 258047 vertices")
    dense = g.dense
    bits = [dense[i, j] for j in range(1, n) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    for t in range(0, len(bits), 6):
        v = 0
        for b in bits[t:t + 6]:
            v = (v << 1) | int(b)
        out.append(v + 63)
    return bytes(out)


def _label(g: Graph, v: int) -> str:
    if g.grassmannian is None:
        return str(v)
    return json.dumps(g.grassmannian[v].to_json(), separators=(",", ":"))


def to_dot(g: Graph) -> bytes:
    lines = [f"graph {g.kind} {{"]
    for v in range(g.vertex_count):
        label = _label(g, v).replace('"', '\\"')
        lines.append(f'  {v} [label="{label}"];')
    for a, b in g.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def to_json(g: Graph) -> bytes:
    G = g.grassmannian
    obj = {
        "kind": g.kind,
        "q": G.q if G is not None else None,
        "m": G.m if G is not None else None,
        "vertices": g.vertex_count,
        "adjacency": [g.neighbors(v).tolist() for v in range(g.vertex_count)],
    }
    return (json.dumps(obj, separators=(",", ":")) + "\n").encode()


def export(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return to_graph6(g) + b"\n"
    if fmt == "dot":
        return to_dot(g)
    if fmt == "json":
        return to_json(g)
    raise ValueError(f"unknown export format {fmt!r}")
