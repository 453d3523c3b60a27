"""Guttman R-Tree with quadratic split, parameterized by a boundary condition.

The tree code is the textbook algorithm; all geometry (cover growth,
enlargement, overlap and containment tests) goes through :mod:`pbcrtree.aabb`,
so the same code indexes periodic and unbounded data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from . import aabb as geo
from .aabb import Aabb
from .boundary import BoundaryCondition, BoundaryError, Unbounded

__all__ = ["Entry", "Node", "RTree", "RTreeConfigError", "DuplicateIdError", "QueryStats"]

DEFAULT_MIN_ENTRIES = 3
DEFAULT_MAX_ENTRIES = 8


class RTreeConfigError(ValueError):
    """Bad occupancy bounds or a dimension mismatch."""


class DuplicateIdError(KeyError):
    pass


@dataclass
class Entry:
    box: Aabb
    child: Optional["Node"] = None
    id: Optional[int] = None


@dataclass
class Node:
    level: int
    entries: list[Entry] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return self.level == 0


@dataclass
class QueryStats:
    nodes_visited: int = 0


class RTree:
    """R-Tree over center-radius boxes.

    Parameters
    ----------
    dimension : int
        Number of coordinate axes.
    boundary : Unbounded or Periodic, optional
        Domain the boxes live in. Defaults to unbounded space.
    min_entries, max_entries : int
        Occupancy bounds ``m`` and ``M``; requires ``2 <= m <= ceil(M / 2)``.

    Notes
    -----
    Queries may run concurrently with each other, but not with ``insert`` or
    ``remove``. No locking is done internally.
    """

    def __init__(self, dimension: int, boundary: BoundaryCondition | None = None,
                 min_entries: int = DEFAULT_MIN_ENTRIES, max_entries: int = DEFAULT_MAX_ENTRIES):
        boundary = Unbounded() if boundary is None else boundary
        if int(dimension) != dimension or dimension < 1:
            raise RTreeConfigError(f"dimension must be a positive integer, got {dimension!r}")
        if boundary.periodic and boundary.dimension != dimension:
            raise RTreeConfigError(
                f"boundary has dimension {boundary.dimension}, tree has {dimension}")
        if not (2 <= min_entries <= math.ceil(max_entries / 2)):
            raise RTreeConfigError(
                f"occupancy bounds need 2 <= m <= ceil(M/2); got m={min_entries}, M={max_entries}")
        self.dimension = int(dimension)
        self.boundary = boundary
        self.min_entries = int(min_entries)
        self.max_entries = int(max_entries)
        self.root = Node(level=0)
        self._boxes: dict[int, Aabb] = {}

    def __len__(self) -> int:
        return len(self._boxes)

    @property
    def count(self) -> int:
        return len(self._boxes)

    @property
    def depth(self) -> int:
        """Number of levels (1 for a tree whose root is a leaf)."""
        return self.root.level + 1

    def __contains__(self, id_) -> bool:
        return id_ in self._boxes

    def items(self) -> Iterator[tuple[int, Aabb]]:
        """(id, box) pairs in leaf order."""
        for leaf in self._iter_nodes(self.root):
            if leaf.is_leaf:
                for e in leaf.entries:
                    yield e.id, e.box

    def root_cover(self) -> Optional[Aabb]:
        if not self.root.entries:
            return None
        return geo.cover((e.box for e in self.root.entries), self.boundary)

    def _check_box(self, box: Aabb) -> Aabb:
        if len(box.center) != self.dimension or len(box.radius) != self.dimension:
            raise RTreeConfigError(
                f"box has dimension {len(box.center)}, tree has {self.dimension}")
        return geo.make_aabb(box.center, box.radius, self.boundary)

    # -- insertion -------------------------------------------------------

    def insert(self, id_: int, box: Aabb) -> None:
        box = self._check_box(box)
        id_ = int(id_)
        if id_ in self._boxes:
            raise DuplicateIdError(f"id {id_} is already in the tree")
        self._insert_entry(Entry(box=box, id=id_), level=0)
        self._boxes[id_] = box

    def _choose_node(self, box: Aabb, level: int) -> list[tuple[Node, int]]:
        """Descend to a node at ``level``; returns the path as (node, index in parent)."""
        b = self.boundary
        node = self.root
        path = [(node, -1)]
        while node.level > level:
            best = -1
            best_key = None
            for i, e in enumerate(node.entries):
                vol = geo.volume(e.box, b)
                grow = max(geo.volume(geo.expand_to_contain_aabb(e.box, box, b), b) - vol, 0.0)
                key = (grow, vol)
                if best_key is None or key < best_key:
                    best, best_key = i, key
            node = node.entries[best].child
            path.append((node, best))
        return path

    def _insert_entry(self, entry: Entry, level: int) -> None:
        path = self._choose_node(entry.box, level)
        node = path[-1][0]
        node.entries.append(entry)
        split = self._split(node) if len(node.entries) > self.max_entries else None
        self._adjust_tree(path, entry.box, split)

    def _adjust_tree(self, path, added: Aabb, split: Optional[Node]) -> None:
        b = self.boundary
        for depth in range(len(path) - 1, 0, -1):
            node, idx = path[depth]
            parent = path[depth - 1][0]
            pe = parent.entries[idx]
            if split is None:
                grown = geo.expand_to_contain_aabb(pe.box, added, b)
                if not all(geo.aabb_within(grown, e.box, b) for e in node.entries):
                    grown = geo.cover([grown] + [e.box for e in node.entries], b)
                pe.box = grown
                added = grown
            else:
                pe.box = self._node_cover(node)
                parent.entries.append(Entry(box=self._node_cover(split), child=split))
                split = self._split(parent) if len(parent.entries) > self.max_entries else None
                added = pe.box
        if split is not None:
            old = self.root
            self.root = Node(level=old.level + 1, entries=[
                Entry(box=self._node_cover(old), child=old),
                Entry(box=self._node_cover(split), child=split),
            ])

    def _node_cover(self, node: Node) -> Aabb:
        return geo.cover((e.box for e in node.entries), self.boundary)

    def _split(self, node: Node) -> Node:
        """Quadratic split; ``node`` keeps group one, the returned sibling gets group two."""
        b = self.boundary
        entries = node.entries
        vols = [geo.volume(e.box, b) for e in entries]
        seeds = (0, 1)
        worst = -math.inf
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                d = geo.volume(geo.expand_to_contain_aabb(entries[i].box, entries[j].box, b), b) \
                    - vols[i] - vols[j]
                if d > worst:
                    worst, seeds = d, (i, j)
        groups = ([entries[seeds[0]]], [entries[seeds[1]]])
        covers = [entries[seeds[0]].box, entries[seeds[1]].box]
        rest = [e for k, e in enumerate(entries) if k not in seeds]
        m = self.min_entries
        while rest:
            if len(groups[0]) + len(rest) <= m:
                groups[0].extend(rest)
                break
            if len(groups[1]) + len(rest) <= m:
                groups[1].extend(rest)
                break
            cover_vols = [geo.volume(covers[0], b), geo.volume(covers[1], b)]
            pick = 0
            pick_diff = -1.0
            pick_grow = None
            for k, e in enumerate(rest):
                g0 = geo.expand_to_contain_aabb(covers[0], e.box, b)
                g1 = geo.expand_to_contain_aabb(covers[1], e.box, b)
                d0 = max(geo.volume(g0, b) - cover_vols[0], 0.0)
                d1 = max(geo.volume(g1, b) - cover_vols[1], 0.0)
                diff = abs(d0 - d1)
                if diff > pick_diff:
                    pick, pick_diff, pick_grow = k, diff, (d0, d1, g0, g1)
            e = rest.pop(pick)
            d0, d1, g0, g1 = pick_grow
            key0 = (d0, cover_vols[0], len(groups[0]), 0)
            key1 = (d1, cover_vols[1], len(groups[1]), 1)
            target = 0 if key0 <= key1 else 1
            groups[target].append(e)
            covers[target] = g0 if target == 0 else g1
        node.entries = groups[0]
        return Node(level=node.level, entries=groups[1])

    # -- deletion --------------------------------------------------------

    def remove(self, id_: int, box: Aabb) -> bool:
        """Delete ``id_`` if it is stored with (approximately) ``box``."""
        id_ = int(id_)
        stored = self._boxes.get(id_)
        if stored is None:
            return False
        try:
            box = self._check_box(box)
        except (BoundaryError, RTreeConfigError):
            return False
        if not geo.boxes_close(stored, box, self.boundary):
            return False
        path = self._find_leaf(self.root, id_, stored, [(self.root, -1)])
        if path is None:  # pragma: no cover - would mean the id map is out of sync
            raise RuntimeError(f"id {id_} is indexed but not reachable from the root")
        leaf = path[-1][0]
        leaf.entries = [e for e in leaf.entries if e.id != id_]
        del self._boxes[id_]
        self._condense_tree(path)
        if not self.root.is_leaf and len(self.root.entries) == 1:
            self.root = self.root.entries[0].child
        return True

    def _find_leaf(self, node: Node, id_: int, box: Aabb, path):
        if node.is_leaf:
            return path if any(e.id == id_ for e in node.entries) else None
        for i, e in enumerate(node.entries):
            if geo.intersects(e.box, box, self.boundary):
                found = self._find_leaf(e.child, id_, box, path + [(e.child, i)])
                if found is not None:
                    return found
        return None

    def _condense_tree(self, path) -> None:
        orphans: list[Node] = []
        for depth in range(len(path) - 1, 0, -1):
            node, idx = path[depth]
            parent = path[depth - 1][0]
            if len(node.entries) < self.min_entries:
                del parent.entries[idx]
                orphans.append(node)
            else:
                parent.entries[idx].box = self._node_cover(node)
        # root stays at its level while orphans go back in, so every level still exists
        for node in reversed(orphans):
            for e in node.entries:
                self._insert_entry(e, node.level)
        while not self.root.is_leaf and len(self.root.entries) == 1:
            self.root = self.root.entries[0].child

    # -- queries ---------------------------------------------------------

    def _query_box(self, q: Aabb) -> Aabb:
        if len(q.center) != self.dimension or len(q.radius) != self.dimension:
            raise RTreeConfigError(f"query has dimension {len(q.center)}, tree has {self.dimension}")
        return geo.make_aabb(q.center, q.radius, self.boundary)

    def query_intersects(self, q: Aabb, stats: QueryStats | None = None) -> set[int]:
        """Ids of all stored boxes that overlap ``q``."""
        q = self._query_box(q)
        return self._search(q, within=False, stats=stats)

    def query_within(self, q: Aabb, stats: QueryStats | None = None) -> set[int]:
        """Ids of all stored boxes that lie entirely inside ``q``."""
        q = self._query_box(q)
        return self._search(q, within=True, stats=stats)

    def _search(self, q: Aabb, within: bool, stats: QueryStats | None) -> set[int]:
        b = self.boundary
        hits: set[int] = set()
        if not self.root.entries:
            return hits
        leaf_test = geo.aabb_within if within else geo.intersects
        stack = [self.root]
        visited = 0
        while stack:
            node = stack.pop()
            visited += 1
            if node.is_leaf:
                for e in node.entries:
                    if leaf_test(q, e.box, b):
                        hits.add(e.id)
            else:
                for e in node.entries:
                    if geo.intersects(q, e.box, b):
                        stack.append(e.child)
        if stats is not None:
            stats.nodes_visited += visited
        return hits

    # -- inspection ------------------------------------------------------

    def _iter_nodes(self, node: Node) -> Iterator[Node]:
        yield node
        if not node.is_leaf:
            for e in node.entries:
                yield from self._iter_nodes(e.child)

    def nodes(self) -> Iterator[Node]:
        return self._iter_nodes(self.root)

    def validate(self) -> list[str]:
        """Return one message per violated structural invariant (empty if sound)."""
        problems: list[str] = []
        b = self.boundary
        leaf_ids: list[int] = []

        def walk(node: Node, where: str, expected_level: Optional[int]):
            if expected_level is not None and node.level != expected_level:
                problems.append(f"{where}: level {node.level}, expected {expected_level} (leaf depth)")
            n = len(node.entries)
            if node is self.root:
                if n > self.max_entries:
                    problems.append(f"{where}: occupancy {n} exceeds M={self.max_entries}")
                if not node.is_leaf and n < 2:
                    problems.append(f"{where}: internal root has {n} children, needs >= 2")
            elif not (self.min_entries <= n <= self.max_entries):
                problems.append(
                    f"{where}: occupancy {n} outside [{self.min_entries}, {self.max_entries}]")
            for i, e in enumerate(node.entries):
                here = f"{where}/{i}"
                if len(e.box.center) != self.dimension:
                    problems.append(f"{here}: box dimension {len(e.box.center)} != {self.dimension}")
                    continue
                if node.is_leaf:
                    if e.child is not None or e.id is None:
                        problems.append(f"{here}: leaf entry must carry an id and no child")
                        continue
                    leaf_ids.append(e.id)
                    continue
                if e.child is None or e.id is not None:
                    problems.append(f"{here}: internal entry must carry a child and no id")
                    continue
                for j, ce in enumerate(e.child.entries):
                    if not geo.aabb_within(e.box, ce.box, b):
                        problems.append(f"{here}: parent box does not contain child entry {j}"
                                        " (parent containment)")
                walk(e.child, here, node.level - 1)

        walk(self.root, "root", None)
        if len(leaf_ids) != len(set(leaf_ids)):
            problems.append("tree: duplicate ids among leaf entries")
        if len(leaf_ids) != len(self._boxes) or set(leaf_ids) != set(self._boxes):
            problems.append(
                f"tree: count {len(self._boxes)} does not match {len(leaf_ids)} reachable leaf entries")
        return problems

    # -- snapshots -------------------------------------------------------

    def to_json(self) -> dict:
        from .snapshot import tree_to_json
        return tree_to_json(self)

    @classmethod
    def from_json(cls, doc: dict) -> "RTree":
        from .snapshot import tree_from_json
        return tree_from_json(doc)

    @classmethod
    def from_items(cls, dimension: int, items: Sequence[tuple[int, Aabb]],
                   boundary: BoundaryCondition | None = None, **kwargs) -> "RTree":
        tree = cls(dimension, boundary, **kwargs)
        for id_, box in items:
            tree.insert(id_, box)
        return tree
