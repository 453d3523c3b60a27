"""Simulation domains: unbounded space or a periodic cuboid cell.

Both expose ``restrict_position`` (wrap a point into the primary cell) and
``restrict_vector`` (minimum-image displacement). Positions land in the
half-open cell ``[lower, upper)``; displacements land in ``[-L/2, L/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

__all__ = [
    "BoundaryError",
    "CuboidCell",
    "Unbounded",
    "Periodic",
    "BoundaryCondition",
    "restrict_position",
    "restrict_vector",
    "boundary_from_json",
    "boundary_to_json",
    "parse_boundary_spec",
]

Vector = tuple[float, ...]


class BoundaryError(ValueError):
    """Invalid cell definition or non-finite coordinates."""


def _as_finite_tuple(values: Sequence[float], what: str) -> Vector:
    out = tuple(float(v) for v in values)
    for v in out:
        if not math.isfinite(v):
            raise BoundaryError(f"{what} contains a non-finite value: {out!r}")
    return out


@dataclass(frozen=True)
class CuboidCell:
    lower: Vector
    upper: Vector

    def __post_init__(self):
        lower = _as_finite_tuple(self.lower, "cell lower corner")
        upper = _as_finite_tuple(self.upper, "cell upper corner")
        if len(lower) != len(upper) or not lower:
            raise BoundaryError("cell corners must have the same, non-zero dimension")
        for lo, hi in zip(lower, upper):
            if not hi > lo:
                raise BoundaryError(f"cell upper corner must exceed lower on every axis: {lower} / {upper}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def periods(self) -> Vector:
        return tuple(hi - lo for lo, hi in zip(self.lower, self.upper))


@dataclass(frozen=True)
class Unbounded:
    """Plain Euclidean space; both restrict operations are the identity."""

    periodic = False

    def restrict_position(self, p: Sequence[float]) -> Vector:
        return _as_finite_tuple(p, "position")

    def restrict_vector(self, v: Sequence[float]) -> Vector:
        return _as_finite_tuple(v, "vector")

    def to_json(self) -> dict:
        return {"kind": "unbounded"}


@dataclass(frozen=True)
class Periodic:
    """Periodic boundary on every axis of a cuboid cell."""

    cell: CuboidCell
    periodic = True

    def __post_init__(self):
        # cached per-axis data used on every hot-path call
        object.__setattr__(self, "_lower", self.cell.lower)
        object.__setattr__(self, "_upper", self.cell.upper)
        object.__setattr__(self, "_periods", self.cell.periods)
        object.__setattr__(self, "_halves", tuple(0.5 * L for L in self.cell.periods))

    @classmethod
    def from_bounds(cls, lower: Sequence[float], upper: Sequence[float]) -> "Periodic":
        return cls(CuboidCell(tuple(lower), tuple(upper)))

    @property
    def dimension(self) -> int:
        return self.cell.dimension

    @property
    def lower(self) -> Vector:
        return self._lower

    @property
    def upper(self) -> Vector:
        return self._upper

    @property
    def periods(self) -> Vector:
        return self._periods

    @property
    def half_periods(self) -> Vector:
        return self._halves

    def restrict_position(self, p: Sequence[float]) -> Vector:
        p = _as_finite_tuple(p, "position")
        if len(p) != len(self._periods):
            raise BoundaryError(f"position has dimension {len(p)}, cell has {len(self._periods)}")
        return tuple(wrap_position(x, lo, L) for x, lo, L in zip(p, self._lower, self._periods))

    def restrict_vector(self, v: Sequence[float]) -> Vector:
        v = _as_finite_tuple(v, "vector")
        if len(v) != len(self._periods):
            raise BoundaryError(f"vector has dimension {len(v)}, cell has {len(self._periods)}")
        return tuple(minimum_image(x, L) for x, L in zip(v, self._periods))

    def to_json(self) -> dict:
        return {"kind": "periodic", "lower": list(self._lower), "upper": list(self._upper)}


BoundaryCondition = Union[Unbounded, Periodic]


def wrap_position(x: float, lower: float, period: float) -> float:
    """Scalar wrap of ``x`` into ``[lower, lower + period)``."""
    r = x - period * math.floor((x - lower) / period)
    # rounding can land exactly on either edge of the half-open range
    if r >= lower + period:
        r -= period
    if r < lower:
        r = lower
    return r


def minimum_image(v: float, period: float) -> float:
    """Scalar minimum image of ``v`` in ``[-period/2, period/2)``."""
    r = v - period * math.floor(v / period + 0.5)
    half = 0.5 * period
    if r >= half:
        r -= period
    elif r < -half:
        r += period
    return r


def restrict_position(p: Sequence[float], b: BoundaryCondition) -> Vector:
    return b.restrict_position(p)


def restrict_vector(v: Sequence[float], b: BoundaryCondition) -> Vector:
    return b.restrict_vector(v)


def boundary_to_json(b: BoundaryCondition) -> dict:
    return b.to_json()


def boundary_from_json(doc: dict) -> BoundaryCondition:
    kind = doc.get("kind")
    if kind == "unbounded":
        return Unbounded()
    if kind == "periodic":
        try:
            return Periodic.from_bounds(doc["lower"], doc["upper"])
        except KeyError as exc:
            raise BoundaryError(f"periodic boundary is missing {exc.args[0]!r}") from None
    raise BoundaryError(f"unknown boundary kind {kind!r}")


def parse_boundary_spec(text: str) -> BoundaryCondition:
    """Parse ``"unbounded"`` or ``"lx,ly:ux,uy"`` (any dimension)."""
    text = text.strip()
    if text.lower() in ("unbounded", "none", "open"):
        return Unbounded()
    if ":" not in text:
        raise BoundaryError(f"boundary spec must look like 'lx,ly:ux,uy' or 'unbounded', got {text!r}")
    lo, hi = text.split(":", 1)
    try:
        lower = [float(t) for t in lo.split(",")]
        upper = [float(t) for t in hi.split(",")]
    except ValueError:
        raise BoundaryError(f"non-numeric boundary spec {text!r}") from None
    return Periodic.from_bounds(lower, upper)
