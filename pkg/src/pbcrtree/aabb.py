"""Center-radius axis-aligned boxes and their periodic-aware geometry.

Every predicate works per axis on the minimum-image displacement between box
centers, so a box that sticks out of the cell is handled without building
any periodic images.  Under a periodic boundary a radius of ``L/2`` means
the box covers the whole axis.
"""

from __future__ import annotations

import math
import warnings
from typing import Iterable, NamedTuple, Sequence

from .boundary import BoundaryCondition, BoundaryError, minimum_image, wrap_position

__all__ = [
    "Aabb",
    "MinMaxBox",
    "BoxClampWarning",
    "make_aabb",
    "to_aabb",
    "from_aabb",
    "expand_to_contain_aabb",
    "expand_to_contain_point",
    "intersects",
    "aabb_within",
    "point_within",
    "volume",
    "enlargement",
    "cover",
    "boxes_close",
]

Vector = tuple[float, ...]


class BoxClampWarning(UserWarning):
    """A box wider than the periodic cell was clamped to full-axis coverage."""


class Aabb(NamedTuple):
    center: Vector
    radius: Vector

    @property
    def dimension(self) -> int:
        return len(self.center)

    def to_json(self) -> dict:
        return {"center": list(self.center), "radius": list(self.radius)}


class MinMaxBox(NamedTuple):
    min: Vector
    max: Vector


def _axes(b: BoundaryCondition, dim: int):
    """Per-axis (lower, period, half period); ``None`` entries when unbounded."""
    if not b.periodic:
        return None
    if b.dimension != dim:
        raise BoundaryError(f"box has dimension {dim}, boundary has {b.dimension}")
    return tuple(zip(b.lower, b.periods, b.half_periods))


def make_aabb(center: Sequence[float], radius: Sequence[float], b: BoundaryCondition) -> Aabb:
    """Validate and canonicalize a box: wrap the center, clamp oversize radii."""
    center = tuple(float(c) for c in center)
    radius = tuple(float(r) for r in radius)
    if len(center) != len(radius) or not center:
        raise BoundaryError("center and radius must have the same non-zero length")
    for v in center + radius:
        if not math.isfinite(v):
            raise BoundaryError(f"box has a non-finite component: {center} / {radius}")
    if any(r < 0 for r in radius):
        raise BoundaryError(f"box radius must be non-negative, got {radius}")
    axes = _axes(b, len(center))
    if axes is None:
        return Aabb(center, radius)
    clamped = False
    new_r = []
    for r, (_, _, half) in zip(radius, axes):
        if r > half:
            r = half
            clamped = True
        new_r.append(r)
    if clamped:
        warnings.warn(f"box radius {radius} exceeds half the cell; clamped to full-axis coverage",
                      BoxClampWarning, stacklevel=2)
    return Aabb(b.restrict_position(center), tuple(new_r))


def to_aabb(box: MinMaxBox, b: BoundaryCondition) -> Aabb:
    lo = tuple(float(v) for v in box.min)
    hi = tuple(float(v) for v in box.max)
    if len(lo) != len(hi):
        raise BoundaryError("min and max corners differ in dimension")
    if any(h < l for l, h in zip(lo, hi)):
        raise BoundaryError(f"negative box extent: min={lo} max={hi}")
    center = tuple(0.5 * (l + h) for l, h in zip(lo, hi))
    radius = tuple(0.5 * (h - l) for l, h in zip(lo, hi))
    return make_aabb(center, radius, b)


def from_aabb(r: Aabb) -> MinMaxBox:
    """Unwrapped min-max corners; ``min`` may lie below the cell's lower edge."""
    return MinMaxBox(tuple(c - h for c, h in zip(r.center, r.radius)),
                     tuple(c + h for c, h in zip(r.center, r.radius)))


def _axis_within(co: float, ro: float, ci: float, ri: float, ax) -> bool:
    if ax is None:
        return abs(co - ci) <= ro - ri
    if ro >= ax[2]:
        return True
    return abs(minimum_image(co - ci, ax[1])) <= ro - ri


def _expand_axis(c1, r1, c2, r2, ax):
    if ax is None:
        dc = c2 - c1
    else:
        dc = minimum_image(c2 - c1, ax[1])
    t = c1 + dc
    lo = min(c1 - r1, t - r2)
    hi = max(c1 + r1, t + r2)
    c = 0.5 * (lo + hi)
    hw = 0.5 * (hi - lo)
    if ax is not None:
        c = wrap_position(c, ax[0], ax[1])
        if hw >= ax[2]:
            return c, ax[2]
    # rounding in the midpoint and the wrap can miss an input by an ulp or so
    while not (_axis_within(c, hw, c1, r1, ax) and _axis_within(c, hw, c2, r2, ax)):
        hw = math.nextafter(hw, math.inf)
        if ax is not None and hw >= ax[2]:
            return c, ax[2]
    return c, hw


def expand_to_contain_aabb(r1: Aabb, r2: Aabb, b: BoundaryCondition) -> Aabb:
    """Smallest box around ``r1`` and the image of ``r2`` nearest to it."""
    axes = _axes(b, len(r1.center)) or (None,) * len(r1.center)
    cs = []
    hs = []
    for c1, h1, c2, h2, ax in zip(r1.center, r1.radius, r2.center, r2.radius, axes):
        c, h = _expand_axis(c1, h1, c2, h2, ax)
        cs.append(c)
        hs.append(h)
    return Aabb(tuple(cs), tuple(hs))


def expand_to_contain_point(r: Aabb, p: Sequence[float], b: BoundaryCondition) -> Aabb:
    """Grow ``r`` to the nearest image of ``p``.

    The point is moved next to the box (``center + minimum_image(p - center)``)
    before taking the min/max, same as for box expansion.
    """
    axes = _axes(b, len(r.center)) or (None,) * len(r.center)
    cs = []
    hs = []
    for c1, h1, x, ax in zip(r.center, r.radius, p, axes):
        c, h = _expand_axis(c1, h1, x, 0.0, ax)
        cs.append(c)
        hs.append(h)
    return Aabb(tuple(cs), tuple(hs))


def intersects(r1: Aabb, r2: Aabb, b: BoundaryCondition) -> bool:
    if not b.periodic:
        for c1, h1, c2, h2 in zip(r1.center, r1.radius, r2.center, r2.radius):
            if abs(c1 - c2) > h1 + h2:
                return False
        return True
    for c1, h1, c2, h2, L in zip(r1.center, r1.radius, r2.center, r2.radius, b.periods):
        if abs(minimum_image(c1 - c2, L)) > h1 + h2:
            return False
    return True


def aabb_within(outer: Aabb, inner: Aabb, b: BoundaryCondition) -> bool:
    """True if ``inner`` lies inside ``outer`` (boundaries inclusive)."""
    axes = _axes(b, len(outer.center)) or (None,) * len(outer.center)
    for co, ro, ci, ri, ax in zip(outer.center, outer.radius, inner.center, inner.radius, axes):
        if not _axis_within(co, ro, ci, ri, ax):
            return False
    return True


def point_within(r: Aabb, p: Sequence[float], b: BoundaryCondition) -> bool:
    if not b.periodic:
        for c, h, x in zip(r.center, r.radius, p):
            if abs(c - x) > h:
                return False
        return True
    for c, h, x, L in zip(r.center, r.radius, p, b.periods):
        if abs(minimum_image(c - x, L)) > h:
            return False
    return True


def volume(r: Aabb, b: BoundaryCondition) -> float:
    v = 1.0
    if b.periodic:
        for h, L in zip(r.radius, b.periods):
            v *= min(2.0 * h, L)
    else:
        for h in r.radius:
            v *= 2.0 * h
    return v


def enlargement(base: Aabb, add: Aabb, b: BoundaryCondition) -> float:
    """Volume growth of ``base`` when expanded to hold ``add``; may dip below 0 by rounding."""
    return volume(expand_to_contain_aabb(base, add, b), b) - volume(base, b)


def cover(boxes: Iterable[Aabb], b: BoundaryCondition) -> Aabb:
    """Fold of expansion over ``boxes`` (first box is the seed).

    The radius is then padded so every input passes ``aabb_within`` exactly;
    folding alone only guarantees that up to rounding.
    """
    boxes = list(boxes)
    if not boxes:
        raise ValueError("cover of an empty sequence")
    acc = boxes[0]
    for box in boxes[1:]:
        acc = expand_to_contain_aabb(acc, box, b)
    axes = _axes(b, len(acc.center)) or (None,) * len(acc.center)
    radius = list(acc.radius)
    for k, ax in enumerate(axes):
        co = acc.center[k]
        while not all(_axis_within(co, radius[k], box.center[k], box.radius[k], ax) for box in boxes):
            radius[k] = math.nextafter(radius[k], math.inf)
            if ax is not None and radius[k] >= ax[2]:
                radius[k] = ax[2]
    return Aabb(acc.center, tuple(radius))


def boxes_close(r1: Aabb, r2: Aabb, b: BoundaryCondition, tol: float = 1e-9) -> bool:
    """Component-wise match of two canonical boxes within ``tol``."""
    if len(r1.center) != len(r2.center):
        return False
    dc = b.restrict_vector(tuple(x - y for x, y in zip(r1.center, r2.center)))
    return (all(abs(d) <= tol for d in dc)
            and all(abs(x - y) <= tol for x, y in zip(r1.radius, r2.radius)))
