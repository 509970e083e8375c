"""Command-line front end.

    subspace-lab enumerate --p 3 --m 2 --format json
    subspace-lab graph --p 2 --m 2 --kind distant --format table
    subspace-lab verify thm32 --p 2 --m 2
    subspace-lab aut --p 2 --m 2 --kind grassmann
    subspace-lab ringline verify --p 2 --m 2
    subspace-lab export --p 2 --m 1 --kind distant --format graph6
    subspace-lab table --p 2 --max-m 3

Reports go to stdout, errors to stderr as JSON.  The exit status is 0 exactly
when every embedded verification passed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import graphs, maps, theorems
from .automorphism import DEFAULT_MAX_VERTICES
from .field import FieldSpec, make_field
from .grassmann import DEFAULT_MAX_SIZE, Grassmannian
from .ringline import verify_ringline_iso

VERIFY_TARGETS = (
    "thm32", "distance", "trivial", "transfer", "chow", "pencils", "ringline",
    "witness", "semilinear", "complete",
)
INFINITE_FOOTNOTE = "dim V infinite: diameter 3 (outside the finite computation, not computed)"


@dataclass
class RunConfig:
    command: str
    p: int = 2
    k: int = 1
    m: int = 2
    kind: str = "distant"
    format: str = "json"
    verify_target: str | None = None
    seed: int = 0
    max_grassmannian_size: int = DEFAULT_MAX_SIZE
    max_aut_vertices: int = DEFAULT_MAX_VERTICES
    full_sweep: bool = False
    max_m: int = 2

    def __post_init__(self):
        if self.max_grassmannian_size <= 0 or self.max_aut_vertices <= 0:
            raise ValueError("caps must be positive")


def _dumps(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _table(header: list[str], rows: list[list]) -> bytes:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return ("\n".join(lines) + "\n").encode()


def diameter_table(max_m: int, f: FieldSpec, max_size: int = DEFAULT_MAX_SIZE) -> list[dict]:
    """Distant-graph and Grassmann-graph diameters for dim V = 0, 2, ..., 2·max_m."""
    rows = []
    for m in range(max_m + 1):
        G = Grassmannian(f, m, max_size)
        rows.append(
            {
                "dim": 2 * m,
                "vertices": len(G),
                "distant_diameter": graphs.diameter(graphs.build_distant_graph(G)),
                "grassmann_diameter": graphs.diameter(graphs.build_grassmann_graph(G)),
            }
        )
    return rows


def _build(cfg: RunConfig, G: Grassmannian) -> graphs.Graph:
    if cfg.kind == "distant":
        return graphs.build_distant_graph(G)
    if cfg.kind == "grassmann":
        return graphs.build_grassmann_graph(G)
    raise ValueError(f"unknown graph kind {cfg.kind!r}")


def _verify(cfg: RunConfig, f: FieldSpec, G: Grassmannian):
    t = cfg.verify_target
    if t == "thm32":
        return theorems.verify_adjacency_characterization(G, seed=cfg.seed, full_sweep=cfg.full_sweep)
    if t == "distance":
        return theorems.verify_distance_formula(G, seed=cfg.seed, full_sweep=cfg.full_sweep)
    if t == "trivial":
        return theorems.verify_trivial_cases(G)
    if t == "pencils":
        return theorems.verify_pencils(G)
    if t == "witness":
        return theorems.verify_witnesses(G)
    if t == "transfer":
        return maps.verify_iso_transfer(G, max_vertices=cfg.max_aut_vertices)
    if t == "chow":
        return maps.verify_chow(G, max_vertices=cfg.max_aut_vertices)
    if t == "semilinear":
        return maps.verify_semilinear_isomorphisms(G, seed=cfg.seed)
    if t == "complete":
        return maps.verify_complete_line(G)
    if t == "ringline":
        return verify_ringline_iso(f, cfg.m, G)
    raise ValueError(f"unknown verify target {t!r}")


def run(cfg: RunConfig) -> tuple[int, bytes]:
    """Execute one command; returns (exit status, stdout bytes)."""
    f = make_field(cfg.p, cfg.k)
    if cfg.command == "table":
        rows = diameter_table(cfg.max_m, f, cfg.max_grassmannian_size)
        if cfg.format == "json":
            return 0, _dumps({"q": f.q, "modulus": list(f.modulus), "rows": rows, "footnote": INFINITE_FOOTNOTE})
        body = _table(
            ["dim V", "vertices", "distant diameter", "grassmann diameter"],
            [[r["dim"], r["vertices"], r["distant_diameter"], r["grassmann_diameter"]] for r in rows],
        )
        return 0, body + f"* {INFINITE_FOOTNOTE}\n".encode()

    G = Grassmannian(f, cfg.m, cfg.max_grassmannian_size)
    if cfg.command == "enumerate":
        if cfg.format == "json":
            return 0, G.dump_jsonl().encode()
        return 0, _table(["index", "rows"], [[i, X.basis.tolist()] for i, X in enumerate(G)])

    if cfg.command == "graph":
        g = _build(cfg, G)
        if cfg.format in ("dot", "graph6"):
            return 0, graphs.export(g, cfg.format)
        st = graphs.stats(g)
        if cfg.format == "table":
            keys = ["q", "m", "vertices", "kind", "regular_degree", "diameter", "components"]
            return 0, _table(keys, [[st[k] for k in keys]])
        return 0, _dumps(st)

    if cfg.command == "export":
        return 0, graphs.export(_build(cfg, G), cfg.format)

    if cfg.command == "aut":
        aut = maps.automorphisms(_build(cfg, G), cfg.max_aut_vertices)
        obj = aut.to_json()
        obj.update(q=G.q, m=G.m)
        if cfg.format == "table":
            return 0, _table(["kind", "order", "generators", "certificate"], [[aut.kind, aut.order, len(aut.generators), aut.certificate()]])
        return 0, _dumps(obj)

    if cfg.command in ("verify", "ringline"):
        report = _verify(cfg, f, G)
        out = report.to_json()
        out["field"] = f.to_json()
        return (0 if report.verified else 1), _dumps(out)

    raise ValueError(f"unknown command {cfg.command!r}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="field characteristic")
    common.add_argument("--k", type=int, default=1, help="extension degree")
    common.add_argument("--m", type=int, default=2, help="half-dimension, V = F_q^(2m)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE, dest="max_size")
    common.add_argument("--max-aut-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    common.add_argument("--full-sweep", action="store_true")

    parser = argparse.ArgumentParser(prog="subspace-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("--format", choices=["json", "table"], default="json")

    for name in ("graph", "export"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--kind", choices=["distant", "grassmann"], default="distant")
        fmts = ["json", "table", "dot", "graph6"] if name == "graph" else ["json", "dot", "graph6"]
        p.add_argument("--format", choices=fmts, default="json")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("aut", parents=[common])
    p.add_argument("--kind", choices=["distant", "grassmann"], default="distant")
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("ringline", parents=[common])
    p.add_argument("action", choices=["verify"])
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("table", parents=[common])
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--format", choices=["json", "table"], default="table")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            p=args.p,
            k=args.k,
            m=args.m,
            kind=getattr(args, "kind", "distant"),
            format=args.format,
            verify_target="ringline" if args.command == "ringline" else getattr(args, "target", None),
            seed=args.seed,
            max_grassmannian_size=args.max_size,
            max_aut_vertices=args.max_aut_vertices,
            full_sweep=args.full_sweep,
            max_m=getattr(args, "max_m", 2),
        )
        status, out = run(cfg)
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
