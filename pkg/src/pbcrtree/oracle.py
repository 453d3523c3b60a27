"""Ground truth for the index.

``FlatStore`` answers queries by scanning every stored box with the same
predicates as the tree (vectorized with numpy).  ``image_overlap`` checks
overlap the slow way, by enumerating the 3**D periodic images, and shares no
code with the minimum-image predicates it is used to validate.
"""

from __future__ import annotations

import itertools

import numpy as np

from .aabb import Aabb, make_aabb
from .boundary import BoundaryCondition, CuboidCell

__all__ = ["FlatStore", "image_overlap", "plain_overlap"]


def _min_image(v: np.ndarray, periods: np.ndarray) -> np.ndarray:
    r = v - periods * np.floor(v / periods + 0.5)
    half = 0.5 * periods
    r = np.where(r >= half, r - periods, r)
    return np.where(r < -half, r + periods, r)


class FlatStore:
    """Unindexed list of (id, box) pairs.

    Examples
    --------
    >>> from pbcrtree.boundary import Periodic
    >>> store = FlatStore(Periodic.from_bounds([0.0], [10.0]))
    >>> store.add(1, Aabb((0.5,), (0.4,)))
    >>> store.add(2, Aabb((9.5,), (0.4,)))
    >>> sorted(store.scan_intersects(Aabb((0.0,), (1.0,))))
    [1, 2]
    """

    def __init__(self, boundary: BoundaryCondition, items=()):
        self.boundary = boundary
        self._ids: list[int] = []
        self._centers: list[tuple[float, ...]] = []
        self._radii: list[tuple[float, ...]] = []
        self._arrays = None
        for id_, box in items:
            self.add(id_, box)

    def __len__(self) -> int:
        return len(self._ids)

    def add(self, id_: int, box: Aabb) -> None:
        if id_ in self._ids:
            raise KeyError(f"duplicate id {id_}")
        box = make_aabb(box.center, box.radius, self.boundary)
        self._ids.append(int(id_))
        self._centers.append(box.center)
        self._radii.append(box.radius)
        self._arrays = None

    def remove(self, id_: int) -> bool:
        try:
            k = self._ids.index(id_)
        except ValueError:
            return False
        for seq in (self._ids, self._centers, self._radii):
            del seq[k]
        self._arrays = None
        return True

    def _state(self):
        if self._arrays is None:
            self._arrays = (np.asarray(self._ids, dtype=np.int64),
                            np.asarray(self._centers, dtype=float),
                            np.asarray(self._radii, dtype=float))
        return self._arrays

    def _displacements(self, q: Aabb) -> np.ndarray:
        _, centers, _ = self._state()
        dc = np.asarray(q.center, dtype=float) - centers
        if self.boundary.periodic:
            dc = _min_image(dc, np.asarray(self.boundary.periods, dtype=float))
        return np.abs(dc)

    def scan_intersects(self, q: Aabb) -> set[int]:
        if not self._ids:
            return set()
        q = make_aabb(q.center, q.radius, self.boundary)
        ids, _, radii = self._state()
        ok = np.all(self._displacements(q) <= np.asarray(q.radius) + radii, axis=1)
        return set(ids[ok].tolist())

    def scan_within(self, q: Aabb) -> set[int]:
        if not self._ids:
            return set()
        q = make_aabb(q.center, q.radius, self.boundary)
        ids, _, radii = self._state()
        qr = np.asarray(q.radius, dtype=float)
        ok = self._displacements(q) <= qr - radii
        if self.boundary.periodic:
            ok |= qr >= 0.5 * np.asarray(self.boundary.periods, dtype=float)
        return set(ids[np.all(ok, axis=1)].tolist())


def plain_overlap(r1: Aabb, r2: Aabb) -> bool:
    """Closed-interval overlap on every axis, no periodicity."""
    return all(c1 - h1 <= c2 + h2 and c2 - h2 <= c1 + h1
               for c1, h1, c2, h2 in zip(r1.center, r1.radius, r2.center, r2.radius))


def image_overlap(r1: Aabb, r2: Aabb, cell: CuboidCell) -> bool:
    """True if any of the 3**D translates of ``r2`` overlaps ``r1`` (both unwrapped)."""
    periods = cell.periods
    for shift in itertools.product((-1, 0, 1), repeat=len(periods)):
        image = Aabb(tuple(c + n * L for c, n, L in zip(r2.center, shift, periods)), r2.radius)
        if plain_overlap(r1, image):
            return True
    return False
