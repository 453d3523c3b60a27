"""Command line front end: ``pbcrtree build|query|render|bench|validate``.

Exit codes: 0 success, 1 domain violation (bad data, invalid tree),
2 I/O or usage problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import aabb as geo
from .bench import RunConfig, report_json, report_text, run_benchmark
from .boundary import BoundaryError, Unbounded, parse_boundary_spec
from .render import UnsupportedDimensionError, render_svg
from .rtree import DEFAULT_MAX_ENTRIES, DEFAULT_MIN_ENTRIES, RTree, RTreeConfigError
from .snapshot import DatasetError, SnapshotError, dumps_tree, load_tree, read_dataset

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _boundary(text: str):
    try:
        return parse_boundary_spec(text)
    except BoundaryError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load(path: str) -> RTree:
    try:
        return load_tree(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", EXIT_IO) from None
    except (SnapshotError, BoundaryError, RTreeConfigError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_DOMAIN) from None


def _query_box(tree: RTree, args):
    if args.center is None:
        return None
    radius = args.radius if args.radius is not None else [0.0] * len(args.center)
    if len(args.center) != tree.dimension or len(radius) != tree.dimension:
        raise CliError(f"query must have {tree.dimension} coordinates", EXIT_DOMAIN)
    try:
        return geo.make_aabb(args.center, radius, tree.boundary)
    except BoundaryError as exc:
        raise CliError(f"bad query box: {exc}", EXIT_DOMAIN) from None


def cmd_build(args) -> int:
    try:
        with open(args.input) as fh:
            items = read_dataset(fh, args.boundary)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror or exc}", EXIT_IO) from None
    except DatasetError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_DOMAIN) from None
    if args.boundary.periodic:
        dim = args.boundary.dimension
    elif items:
        dim = len(items[0][1].center)
    else:
        dim = args.dimension
    try:
        tree = RTree(dim, args.boundary, args.min_entries, args.max_entries)
        for id_, box in items:
            tree.insert(id_, box)
    except RTreeConfigError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from None
    try:
        Path(args.output).write_text(dumps_tree(tree))
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror or exc}", EXIT_IO) from None
    total = 0.0
    for node in tree.nodes():
        if not node.is_leaf:
            total += sum(geo.volume(e.box, tree.boundary) for e in node.entries)
    cover = tree.root_cover()
    if cover is not None:
        total += geo.volume(cover, tree.boundary)
    print(f"count={tree.count} depth={tree.depth} total_node_volume={total:.6g}")
    return EXIT_OK


def cmd_query(args) -> int:
    tree = _load(args.tree)
    q = _query_box(tree, args)
    if q is None:
        raise CliError("query needs --center", EXIT_IO)
    hits = tree.query_within(q) if args.mode == "within" else tree.query_intersects(q)
    for id_ in sorted(hits):
        print(id_)
    return EXIT_OK


def cmd_render(args) -> int:
    tree = _load(args.tree)
    q = _query_box(tree, args)
    try:
        svg = render_svg(tree, q, mode=args.mode, show_covers=not args.no_covers)
    except UnsupportedDimensionError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from None
    try:
        Path(args.output).write_text(svg)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror or exc}", EXIT_IO) from None
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = RunConfig(dimension=args.dimension, n=args.n, queries=args.queries, seed=args.seed,
                    min_entries=args.min_entries, max_entries=args.max_entries,
                    cell_size=args.cell_size, layout=args.layout,
                    max_radius_fraction=args.max_radius_fraction)
    try:
        report, timings = run_benchmark(cfg)
    except (ValueError, RTreeConfigError) as exc:
        raise CliError(f"invalid benchmark config: {exc}", EXIT_IO) from None
    sys.stdout.write(report_text(report, timings))
    if args.json:
        try:
            Path(args.json).write_text(report_json(report))
        except OSError as exc:
            raise CliError(f"cannot write {args.json}: {exc.strerror or exc}", EXIT_IO) from None
    failed = any(report[m]["oracle_agreement"] != "pass" for m in ("periodic", "unbounded"))
    return EXIT_DOMAIN if failed else EXIT_OK


def cmd_validate(args) -> int:
    tree = _load(args.tree)
    problems = tree.validate()
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: count={tree.count} depth={tree.depth}")
    return EXIT_DOMAIN if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbcrtree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a JSONL dataset and write a tree snapshot")
    p.add_argument("input", help="JSONL file, one {id, center, radius} object per line")
    p.add_argument("output", help="snapshot JSON to write")
    p.add_argument("--boundary", type=_boundary, default=Unbounded(),
                   help="'lx,ly:ux,uy' for a periodic cell, or 'unbounded' (default)")
    p.add_argument("-m", "--min-entries", type=int, default=DEFAULT_MIN_ENTRIES)
    p.add_argument("-M", "--max-entries", type=int, default=DEFAULT_MAX_ENTRIES)
    p.add_argument("--dimension", type=int, default=2,
                   help="dimension of an empty unbounded tree (otherwise inferred)")
    p.set_defaults(func=cmd_build)

    def query_args(p, required):
        p.add_argument("--center", type=_floats, required=required, help="e.g. 0,0")
        p.add_argument("--radius", type=_floats, help="half widths, e.g. 1,1 (default 0)")
        p.add_argument("--mode", choices=("intersects", "within"), default="intersects")

    p = sub.add_parser("query", help="print ids of boxes hit by a query box")
    p.add_argument("tree")
    query_args(p, required=True)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("render", help="draw a 2-D snapshot as SVG")
    p.add_argument("tree")
    p.add_argument("output")
    query_args(p, required=False)
    p.add_argument("--no-covers", action="store_true", help="omit node cover boxes")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="compare periodic and unbounded indexing on seeded data")
    p.add_argument("--dimension", type=int, default=2)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--queries", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-m", "--min-entries", type=int, default=DEFAULT_MIN_ENTRIES)
    p.add_argument("-M", "--max-entries", type=int, default=DEFAULT_MAX_ENTRIES)
    p.add_argument("--cell-size", type=float, default=10.0)
    p.add_argument("--layout", choices=("uniform", "seam-cluster"), default="uniform")
    p.add_argument("--max-radius-fraction", type=float, default=0.1)
    p.add_argument("--json", help="also write the (deterministic) JSON report here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="check structural invariants of a snapshot")
    p.add_argument("tree")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"pbcrtree {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
