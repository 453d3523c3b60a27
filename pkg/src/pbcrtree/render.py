"""SVG drawing of a 2-D tree.

Boxes that stick out of the cell are drawn as the pieces of their periodic
images that fall inside it, so one box can show up as two or four rectangles.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional
from xml.sax.saxutils import quoteattr

from . import aabb as geo
from .aabb import Aabb
from .rtree import RTree

__all__ = ["UnsupportedDimensionError", "box_fragments", "render_svg"]

LEVEL_COLORS = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]

STYLE = """
.cell { fill: #ffffff; stroke: #000000; stroke-width: 1.5; }
.object { fill: #000000; fill-opacity: 0.55; stroke: #000000; stroke-width: 0.5; }
.object.hit { fill: #d62728; fill-opacity: 0.9; stroke: #d62728; }
.query { fill: #ffdd00; fill-opacity: 0.35; stroke: #b8a000; stroke-width: 1; }
.cover { fill: none; stroke-width: 1; stroke-dasharray: 4 2; }
.cover.root { stroke: #d62728; stroke-width: 2; stroke-dasharray: none; }
"""


class UnsupportedDimensionError(ValueError):
    pass


def box_fragments(box: Aabb, lower, upper) -> list[tuple[float, float, float, float]]:
    """Pieces ``(x0, y0, x1, y1)`` of the box's periodic images clipped to the cell.

    With ``lower``/``upper`` set to ``None`` the box is returned unclipped.
    """
    lo, hi = geo.from_aabb(box)
    if lower is None:
        return [(lo[0], lo[1], hi[0], hi[1])]
    periods = [u - l for l, u in zip(lower, upper)]
    pieces = []
    for nx, ny in itertools.product((-1, 0, 1), repeat=2):
        x0 = max(lo[0] + nx * periods[0], lower[0])
        x1 = min(hi[0] + nx * periods[0], upper[0])
        y0 = max(lo[1] + ny * periods[1], lower[1])
        y1 = min(hi[1] + ny * periods[1], upper[1])
        # zero-size boxes still get a (degenerate) fragment if they sit inside
        if x0 <= x1 and y0 <= y1 and (x0 < upper[0] and y0 < upper[1]):
            if (x1 - x0 > 0 or box.radius[0] == 0) and (y1 - y0 > 0 or box.radius[1] == 0):
                pieces.append((x0, y0, x1, y1))
    return pieces


def _extent(tree: RTree, query: Optional[Aabb]):
    b = tree.boundary
    if b.periodic:
        return b.lower, b.upper
    boxes = [box for _, box in tree.items()]
    if query is not None:
        boxes.append(query)
    if not boxes:
        return (0.0, 0.0), (1.0, 1.0)
    lows = [geo.from_aabb(r).min for r in boxes]
    highs = [geo.from_aabb(r).max for r in boxes]
    lo = tuple(min(p[k] for p in lows) for k in range(2))
    hi = tuple(max(p[k] for p in highs) for k in range(2))
    hi = tuple(h if h > l else l + 1.0 for l, h in zip(lo, hi))
    return lo, hi


def render_svg(tree: RTree, query: Optional[Aabb] = None, mode: str = "intersects",
               size: float = 600.0, margin: float = 20.0, show_covers: bool = True) -> str:
    """Return an SVG document showing cell, node covers, objects and an optional query."""
    if tree.dimension != 2:
        raise UnsupportedDimensionError(f"rendering needs a 2-D tree, got dimension {tree.dimension}")
    b = tree.boundary
    lower, upper = _extent(tree, query)
    clip_lo, clip_hi = (lower, upper) if b.periodic else (None, None)
    span = max(upper[0] - lower[0], upper[1] - lower[1])
    scale = size / span
    width = (upper[0] - lower[0]) * scale + 2 * margin
    height = (upper[1] - lower[1]) * scale + 2 * margin

    def rect(x0, y0, x1, y1) -> str:
        # y axis points up in the drawing
        sx = margin + (x0 - lower[0]) * scale
        sy = margin + (upper[1] - y1) * scale
        return (f'<rect x="{sx:.3f}" y="{sy:.3f}" width="{(x1 - x0) * scale:.3f}" '
                f'height="{(y1 - y0) * scale:.3f}"/>')

    def group(box: Aabb, cls: str, extra: str = "") -> str:
        body = "".join(rect(*f) for f in box_fragments(box, clip_lo, clip_hi))
        return f'<g class={quoteattr(cls)}{extra}>{body}</g>'

    hits: set[int] = set()
    if query is not None:
        hits = tree.query_within(query) if mode == "within" else tree.query_intersects(query)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.3f} {height:.3f}">',
        f"<style>{STYLE}</style>",
        f'<rect class="cell" x="{margin}" y="{margin}" width="{(upper[0] - lower[0]) * scale:.3f}" '
        f'height="{(upper[1] - lower[1]) * scale:.3f}"/>',
    ]
    if query is not None:
        out.append(group(query, "query"))
    for id_, box in sorted(tree.items()):
        cls = "object hit" if id_ in hits else "object"
        out.append(group(box, cls, f' data-id="{id_}"'))
    if show_covers:
        out.extend(_cover_groups(tree, group))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _cover_groups(tree: RTree, group) -> Iterable[str]:
    root_cover = tree.root_cover()
    if root_cover is None:
        return
    yield group(root_cover, "cover root", f' data-level="{tree.root.level}"')
    for node in tree.nodes():
        if node.is_leaf:
            continue
        for e in node.entries:
            lvl = e.child.level
            color = LEVEL_COLORS[lvl % len(LEVEL_COLORS)]
            yield group(e.box, "cover", f' data-level="{lvl}" style="stroke: {color}"')
