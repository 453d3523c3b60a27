"""JSON tree snapshots and the JSONL dataset format."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, TextIO

from .aabb import Aabb, make_aabb
from .boundary import BoundaryCondition, boundary_from_json
from .rtree import Entry, Node, RTree

__all__ = [
    "SNAPSHOT_FORMAT",
    "SNAPSHOT_VERSION",
    "SnapshotError",
    "DatasetError",
    "tree_to_json",
    "tree_from_json",
    "dumps_tree",
    "save_tree",
    "load_tree",
    "read_dataset",
    "write_dataset",
]

SNAPSHOT_FORMAT = "pbcrtree-snapshot"
SNAPSHOT_VERSION = 1


class SnapshotError(ValueError):
    pass


class DatasetError(ValueError):
    """Malformed JSONL dataset; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _node_to_json(node: Node) -> dict:
    if node.is_leaf:
        entries = [{"id": e.id, "box": e.box.to_json()} for e in node.entries]
    else:
        entries = [{"box": e.box.to_json(), "child": _node_to_json(e.child)} for e in node.entries]
    return {"level": node.level, "entries": entries}


def tree_to_json(tree: RTree) -> dict:
    return {
        "format": SNAPSHOT_FORMAT,
        "version": SNAPSHOT_VERSION,
        "dimension": tree.dimension,
        "min_entries": tree.min_entries,
        "max_entries": tree.max_entries,
        "boundary": tree.boundary.to_json(),
        "count": tree.count,
        "root": _node_to_json(tree.root),
    }


def _box(doc: dict) -> Aabb:
    return Aabb(tuple(float(v) for v in doc["center"]), tuple(float(v) for v in doc["radius"]))


def _node_from_json(doc: dict, ids: dict) -> Node:
    level = int(doc["level"])
    node = Node(level=level)
    for e in doc["entries"]:
        if "child" in e:
            node.entries.append(Entry(box=_box(e["box"]), child=_node_from_json(e["child"], ids)))
        else:
            box = _box(e["box"])
            node.entries.append(Entry(box=box, id=int(e["id"])))
            ids[int(e["id"])] = box
    return node


def tree_from_json(doc: dict) -> RTree:
    """Rebuild a tree verbatim (boxes are not recomputed, so ``validate`` sees what was saved)."""
    if doc.get("format") != SNAPSHOT_FORMAT:
        raise SnapshotError(f"not a tree snapshot (format={doc.get('format')!r})")
    if doc.get("version") != SNAPSHOT_VERSION:
        raise SnapshotError(f"unsupported snapshot version {doc.get('version')!r}")
    try:
        tree = RTree(int(doc["dimension"]), boundary_from_json(doc["boundary"]),
                     int(doc["min_entries"]), int(doc["max_entries"]))
        ids: dict[int, Aabb] = {}
        tree.root = _node_from_json(doc["root"], ids)
    except (KeyError, TypeError) as exc:
        raise SnapshotError(f"malformed snapshot: {exc!r}") from None
    tree._boxes = ids
    return tree


def dumps_tree(tree: RTree) -> str:
    return json.dumps(tree_to_json(tree), indent=1, sort_keys=True) + "\n"


def save_tree(tree: RTree, path) -> None:
    Path(path).write_text(dumps_tree(tree))


def load_tree(path) -> RTree:
    return tree_from_json(json.loads(Path(path).read_text()))


def read_dataset(stream: TextIO, boundary: BoundaryCondition) -> list[tuple[int, Aabb]]:
    """Parse ``{"id": .., "center": [..], "radius": [..]}`` records, one per line."""
    records = []
    dim = boundary.dimension if boundary.periodic else None
    seen = set()
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            id_ = rec["id"]
            center = rec["center"]
            radius = rec["radius"]
        except json.JSONDecodeError as exc:
            raise DatasetError(f"invalid JSON ({exc.msg})", lineno) from None
        except (KeyError, TypeError):
            raise DatasetError("record needs 'id', 'center' and 'radius'", lineno) from None
        if not isinstance(id_, int) or isinstance(id_, bool):
            raise DatasetError(f"id must be an integer, got {id_!r}", lineno)
        if dim is None:
            dim = len(center)
        if len(center) != dim or len(radius) != dim:
            raise DatasetError(f"expected dimension {dim}, got center {len(center)} / radius {len(radius)}",
                               lineno)
        if id_ in seen:
            raise DatasetError(f"duplicate id {id_}", lineno)
        seen.add(id_)
        try:
            box = make_aabb(center, radius, boundary)
        except (ValueError, TypeError) as exc:
            raise DatasetError(str(exc), lineno) from None
        records.append((id_, box))
    return records


def write_dataset(stream: TextIO, items: Iterable[tuple[int, Aabb]]) -> None:
    for id_, box in items:
        stream.write(json.dumps({"id": int(id_), "center": list(box.center),
                                 "radius": list(box.radius)}) + "\n")
