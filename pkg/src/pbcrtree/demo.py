"""Seeded datasets: uniform scatter and clusters straddling a cell seam."""

from __future__ import annotations

import numpy as np

from .aabb import Aabb, make_aabb
from .boundary import BoundaryCondition, Periodic

__all__ = [
    "DEMO_CELL",
    "demo_boundary",
    "seam_cluster_dataset",
    "uniform_dataset",
    "random_queries",
    "straddle_scenario",
]

DEMO_CELL = ((0.0, 0.0), (10.0, 10.0))


def demo_boundary() -> Periodic:
    return Periodic.from_bounds(*DEMO_CELL)


def seam_cluster_dataset(n: int = 20, seed: int = 0, spread: float = 1.5, max_radius: float = 0.4,
                         boundary: Periodic | None = None) -> list[tuple[int, Aabb]]:
    """Boxes within ``spread`` of the lower-left corner, alternating sides of the x seam.

    Even ids sit just above the lower x edge, odd ids just below the upper x
    edge; the other coordinates land on a random side of their seam.
    """
    b = boundary or demo_boundary()
    rng = np.random.default_rng(seed)
    items = []
    for i in range(n):
        offset = []
        for k in range(b.dimension):
            d = rng.uniform(0.0, spread)
            # x alternates by id parity, other axes are drawn independently
            side = (i % 2 == 1) if k == 0 else bool(rng.integers(2))
            offset.append(-d if side else d)
        center = [lo + o for lo, o in zip(b.lower, offset)]
        radius = rng.uniform(min(0.05, max_radius), max_radius, size=b.dimension)
        items.append((i, make_aabb(center, radius, b)))
    return items


def uniform_dataset(n: int, dimension: int, boundary: BoundaryCondition, seed: int = 0,
                    max_radius_fraction: float = 0.1, cell=None) -> list[tuple[int, Aabb]]:
    """``n`` boxes with canonical centers uniform in the cell and radii in ``[0, f*L]``."""
    rng = np.random.default_rng(seed)
    lower, upper = _extent(boundary, dimension, cell)
    span = np.asarray(upper) - np.asarray(lower)
    centers = rng.uniform(lower, upper, size=(n, dimension))
    radii = rng.uniform(0.0, max_radius_fraction, size=(n, dimension)) * span
    return [(i, make_aabb(centers[i], radii[i], boundary)) for i in range(n)]


def random_queries(count: int, dimension: int, boundary: BoundaryCondition, seed: int = 0,
                   max_radius_fraction: float = 0.15, straddle_fraction: float = 0.5, cell=None
                   ) -> list[Aabb]:
    """Query boxes; the first ``straddle_fraction`` of them cross at least one cell face."""
    rng = np.random.default_rng(seed)
    lower, upper = _extent(boundary, dimension, cell)
    lower = np.asarray(lower)
    span = np.asarray(upper) - lower
    n_straddle = int(round(count * straddle_fraction))
    out = []
    for k in range(count):
        radius = rng.uniform(0.01, max_radius_fraction, size=dimension) * span
        center = lower + rng.uniform(0.0, 1.0, size=dimension) * span
        if k < n_straddle:
            axis = int(rng.integers(dimension))
            # put the center within one radius of a face so the box sticks out
            d = rng.uniform(0.0, radius[axis] * 0.99)
            if rng.integers(2):
                center[axis] = lower[axis] + d
            else:
                center[axis] = lower[axis] + span[axis] - d
        out.append(make_aabb(center, radius, boundary))
    return out


def straddle_scenario() -> tuple[list[tuple[int, Aabb]], Aabb]:
    """Fixed 2-D layout: a query centered on the corner plus objects near all four corners,
    a few in the middle of the cell."""
    b = demo_boundary()
    raw = [
        (1, (0.6, 0.5), (0.3, 0.3)),
        (2, (9.4, 0.7), (0.3, 0.2)),
        (3, (0.8, 9.3), (0.2, 0.3)),
        (4, (9.6, 9.5), (0.3, 0.3)),
        (5, (5.0, 5.0), (0.4, 0.4)),
        (6, (2.8, 7.0), (0.3, 0.3)),
        (7, (7.5, 2.5), (0.3, 0.3)),
        (8, (8.2, 0.2), (0.2, 0.2)),
        (9, (0.3, 8.0), (0.2, 0.2)),
        (10, (4.0, 0.5), (0.3, 0.3)),
    ]
    items = [(i, make_aabb(c, r, b)) for i, c, r in raw]
    query = make_aabb((0.0, 0.0), (1.2, 1.2), b)
    return items, query


def _extent(boundary, dimension, cell):
    if boundary.periodic:
        return boundary.lower, boundary.upper
    if cell is not None:
        return cell
    return (0.0,) * dimension, (1.0,) * dimension
