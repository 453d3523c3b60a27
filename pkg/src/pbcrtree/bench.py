"""Periodic vs. unbounded indexing on identical seeded data."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass

from . import aabb as geo
from .boundary import Periodic, Unbounded
from .demo import random_queries, seam_cluster_dataset, uniform_dataset
from .oracle import FlatStore
from .rtree import DEFAULT_MAX_ENTRIES, DEFAULT_MIN_ENTRIES, QueryStats, RTree

__all__ = ["RunConfig", "run_benchmark", "report_json", "report_text"]


@dataclass(frozen=True)
class RunConfig:
    dimension: int = 2
    n: int = 1000
    queries: int = 200
    seed: int = 0
    min_entries: int = DEFAULT_MIN_ENTRIES
    max_entries: int = DEFAULT_MAX_ENTRIES
    cell_size: float = 10.0
    layout: str = "uniform"
    max_radius_fraction: float = 0.1

    def validate(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.n < 0 or self.queries < 0:
            raise ValueError("n and queries must be non-negative")
        if self.cell_size <= 0:
            raise ValueError("cell_size must be positive")
        if self.layout not in ("uniform", "seam-cluster"):
            raise ValueError(f"unknown layout {self.layout!r}")
        if not 0 <= self.max_radius_fraction <= 0.5:
            raise ValueError("max_radius_fraction must lie in [0, 0.5]")
        RTree(self.dimension, None, self.min_entries, self.max_entries)


def _level_volumes(tree: RTree) -> dict[str, float]:
    """Sum of node cover volumes per level (keys are level numbers as strings)."""
    totals: dict[str, float] = {}
    cover = tree.root_cover()
    if cover is not None:
        totals[str(tree.root.level)] = geo.volume(cover, tree.boundary)
    for node in tree.nodes():
        if node.is_leaf:
            continue
        for e in node.entries:
            key = str(e.child.level)
            totals[key] = totals.get(key, 0.0) + geo.volume(e.box, tree.boundary)
    return totals


def _run_mode(boundary, items, queries, cfg: RunConfig, timings: dict, name: str) -> dict:
    t0 = time.perf_counter()
    tree = RTree(cfg.dimension, boundary, cfg.min_entries, cfg.max_entries)
    for id_, box in items:
        tree.insert(id_, box)
    timings[f"{name}_build_seconds"] = time.perf_counter() - t0

    store = FlatStore(boundary, items)
    stats = QueryStats()
    agree = True
    result_sizes = 0
    t0 = time.perf_counter()
    for q in queries:
        hits = tree.query_intersects(q, stats)
        result_sizes += len(hits)
        agree &= hits == store.scan_intersects(q)
        agree &= tree.query_within(q) == store.scan_within(q)
    timings[f"{name}_query_seconds"] = time.perf_counter() - t0
    cover = tree.root_cover()
    nq = max(len(queries), 1)
    return {
        "count": tree.count,
        "depth": tree.depth,
        "root_volume": geo.volume(cover, boundary) if cover is not None else 0.0,
        "level_volumes": _level_volumes(tree),
        "mean_node_visits": stats.nodes_visited / nq,
        "mean_result_size": result_sizes / nq,
        "oracle_agreement": "pass" if agree else "fail",
        "violations": len(tree.validate()),
    }


def run_benchmark(cfg: RunConfig) -> tuple[dict, dict]:
    """Returns ``(report, timings)``; the report is a pure function of ``cfg``."""
    cfg.validate()
    L = cfg.cell_size
    periodic = Periodic.from_bounds([0.0] * cfg.dimension, [L] * cfg.dimension)
    if cfg.layout == "seam-cluster":
        items = seam_cluster_dataset(cfg.n, cfg.seed, spread=0.15 * L,
                                     max_radius=cfg.max_radius_fraction * L,
                                     boundary=periodic)
    else:
        items = uniform_dataset(cfg.n, cfg.dimension, periodic, cfg.seed, cfg.max_radius_fraction)
    queries = random_queries(cfg.queries, cfg.dimension, periodic, cfg.seed + 1)
    timings: dict = {}
    report = {
        "config": asdict(cfg),
        # same canonical coordinates, indexed with and without periodicity
        "periodic": _run_mode(periodic, items, queries, cfg, timings, "periodic"),
        "unbounded": _run_mode(Unbounded(), items, queries, cfg, timings, "unbounded"),
    }
    up, uu = report["periodic"]["root_volume"], report["unbounded"]["root_volume"]
    report["root_volume_ratio"] = up / uu if uu > 0 else None
    return report, timings


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_text(report: dict, timings: dict | None = None) -> str:
    cfg = report["config"]
    lines = [f"benchmark: D={cfg['dimension']} n={cfg['n']} queries={cfg['queries']} "
             f"layout={cfg['layout']} seed={cfg['seed']} m={cfg['min_entries']} M={cfg['max_entries']}"]
    for mode in ("periodic", "unbounded"):
        r = report[mode]
        lines.append(
            f"  {mode:9s} depth={r['depth']} root_volume={r['root_volume']:.6g} "
            f"visits/query={r['mean_node_visits']:.2f} hits/query={r['mean_result_size']:.2f} "
            f"oracle={r['oracle_agreement']}")
        if timings:
            lines.append(f"  {'':9s} build={timings[mode + '_build_seconds']:.3f}s "
                         f"query={timings[mode + '_query_seconds']:.3f}s")
    if report["root_volume_ratio"] is not None:
        lines.append(f"  root volume ratio periodic/unbounded = {report['root_volume_ratio']:.4f}")
    return "\n".join(lines) + "\n"
