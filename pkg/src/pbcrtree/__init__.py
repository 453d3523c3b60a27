"""R-Tree spatial index whose bounding-box geometry respects periodic boundaries."""

from .aabb import (
    Aabb,
    BoxClampWarning,
    MinMaxBox,
    aabb_within,
    cover,
    enlargement,
    expand_to_contain_aabb,
    expand_to_contain_point,
    from_aabb,
    intersects,
    make_aabb,
    point_within,
    to_aabb,
    volume,
)
from .boundary import (
    BoundaryError,
    CuboidCell,
    Periodic,
    Unbounded,
    restrict_position,
    restrict_vector,
)
from .estimator import PeriodicBoxIndex
from .oracle import FlatStore, image_overlap, plain_overlap
from .rtree import DuplicateIdError, RTree, RTreeConfigError

__version__ = "0.1.0"
