"""Compare the numba and pure-numpy kernel paths.

    python3 benchmarks/bench_kernels.py --repeat 3

Each kernel is run once per backend to warm up (numba compilation, caches),
then timed ``--repeat`` times; the best time is reported and the outputs of
both backends are checked for exact equality.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from subspace_lab import _kernels
from subspace_lab.field import make_field
from subspace_lab.grassmann import Grassmannian
from subspace_lab.graphs import build_distant_graph, build_grassmann_graph


def best_of(fn, repeat: int):
    out = fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(sizes):
    for p, m in sizes:
        G = Grassmannian(make_field(p), m)
        distant = build_distant_graph(G)
        grass = build_grassmann_graph(G)
        N = len(G)
        rng = np.random.default_rng(0)
        npairs = min(N * (N - 1) // 2, 20_000)
        pi = rng.integers(0, N, npairs)
        pj = rng.integers(0, N, npairs)
        yield f"stacked_ranks q={p} m={m} N={N}", lambda b, G=G: _kernels.stacked_ranks(G.bases, G.field, b)
        yield f"witness_scan q={p} m={m} pairs={npairs}", lambda b, d=distant, i=pi, j=pj: _kernels.witness_scan(d.adjacency, i, j, b)
        yield f"all_distances q={p} m={m} N={N}", lambda b, g=grass: _kernels.all_distances(g.dense, b)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", default="2:2,3:2,2:3", help="comma-separated p:m list")
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    sizes = [tuple(int(x) for x in s.split(":")) for s in args.sizes.split(",")]
    print(f"{'kernel':<40} {'numba s':>10} {'numpy s':>10} {'speedup':>8}  equal")
    for name, fn in cases(sizes):
        t_nb, out_nb = best_of(lambda: fn("numba"), args.repeat)
        t_np, out_np = best_of(lambda: fn("numpy"), args.repeat)
        if isinstance(out_nb, tuple):
            equal = all(np.array_equal(a, b) for a, b in zip(out_nb, out_np))
        else:
            equal = np.array_equal(out_nb, out_np)
        print(f"{name:<40} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x  {equal}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
