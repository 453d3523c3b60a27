"""scikit-learn style front end to the tree.

``PeriodicBoxIndex`` is fitted on box centers (and optional half widths) and
then answers batched box queries, so it can sit in a pipeline next to other
estimators and be cloned/grid-searched like one.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .aabb import Aabb, make_aabb
from .boundary import BoundaryCondition, Periodic, Unbounded, parse_boundary_spec
from .rtree import DEFAULT_MAX_ENTRIES, DEFAULT_MIN_ENTRIES, RTree

__all__ = ["PeriodicBoxIndex", "resolve_boundary", "check_radii"]


def resolve_boundary(boundary, n_features: int) -> BoundaryCondition:
    """Accepts None, a boundary object, a ``"lx,ly:ux,uy"`` string, or ``(lower, upper)``."""
    if boundary is None:
        return Unbounded()
    if isinstance(boundary, (Unbounded, Periodic)):
        b = boundary
    elif isinstance(boundary, str):
        b = parse_boundary_spec(boundary)
    else:
        lower, upper = boundary
        lower = np.broadcast_to(np.asarray(lower, dtype=float), (n_features,))
        upper = np.broadcast_to(np.asarray(upper, dtype=float), (n_features,))
        b = Periodic.from_bounds(lower.tolist(), upper.tolist())
    if b.periodic and b.dimension != n_features:
        raise ValueError(f"boundary has dimension {b.dimension} but X has {n_features} features")
    return b


def check_radii(radius, n_samples: int, n_features: int) -> np.ndarray:
    """Broadcast ``radius`` (None, scalar, per-axis, or per-sample) to ``(n_samples, n_features)``."""
    if radius is None:
        return np.zeros((n_samples, n_features))
    r = np.asarray(radius, dtype=float)
    if r.ndim == 2:
        r = check_array(r, dtype=float)
    try:
        r = np.broadcast_to(r, (n_samples, n_features))
    except ValueError:
        raise ValueError(f"radius with shape {np.shape(radius)} does not fit "
                         f"{n_samples} samples x {n_features} features") from None
    if np.any(r < 0) or not np.all(np.isfinite(r)):
        raise ValueError("radius must be finite and non-negative")
    return r


class PeriodicBoxIndex(BaseEstimator):
    """Box index that respects periodic boundaries.

    Parameters
    ----------
    boundary : None, str, (lower, upper) or boundary object, default=None
        Domain of the data. ``None`` means unbounded space; ``(lower, upper)``
        (scalars broadcast over features) or ``"0,0:10,10"`` define a
        periodic cuboid cell.
    min_entries : int, default=3
        Minimum node occupancy ``m``.
    max_entries : int, default=8
        Maximum node occupancy ``M``.

    Attributes
    ----------
    tree_ : RTree
    boundary_ : Unbounded or Periodic
    n_features_in_ : int
    ids_ : ndarray of shape (n_samples,)
        Identifier of each fitted row; query results are reported in these ids.
    """

    def __init__(self, boundary=None, min_entries=DEFAULT_MIN_ENTRIES, max_entries=DEFAULT_MAX_ENTRIES):
        self.boundary = boundary
        self.min_entries = min_entries
        self.max_entries = max_entries

    def fit(self, X, y=None, radius=None, ids=None):
        """Index boxes centered at the rows of ``X`` with half widths ``radius``."""
        X = check_array(X, dtype=float)
        n, d = X.shape
        r = check_radii(radius, n, d)
        if ids is None:
            ids = np.arange(n)
        ids = np.asarray(ids)
        if ids.shape != (n,) or not np.issubdtype(ids.dtype, np.integer):
            raise ValueError("ids must be a 1-D integer array with one entry per sample")
        if len(np.unique(ids)) != n:
            raise ValueError("ids must be unique")
        self.boundary_ = resolve_boundary(self.boundary, d)
        tree = RTree(d, self.boundary_, self.min_entries, self.max_entries)
        for k in range(n):
            tree.insert(int(ids[k]), make_aabb(X[k], r[k], self.boundary_))
        self.tree_ = tree
        self.ids_ = ids
        self.n_features_in_ = d
        return self

    def _queries(self, X, radius):
        check_is_fitted(self, "tree_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, index was fitted with {self.n_features_in_}")
        r = check_radii(radius, X.shape[0], X.shape[1])
        return [make_aabb(X[k], r[k], self.boundary_) for k in range(X.shape[0])]

    def query(self, X, radius=None, mode="intersects"):
        """Ids hit by each query box, as an object array of sorted int arrays.

        ``mode="within"`` keeps only stored boxes lying entirely inside the query.
        """
        if mode not in ("intersects", "within"):
            raise ValueError(f"mode must be 'intersects' or 'within', got {mode!r}")
        queries = self._queries(X, radius)
        search = self.tree_.query_within if mode == "within" else self.tree_.query_intersects
        out = np.empty(len(queries), dtype=object)
        for k, q in enumerate(queries):
            out[k] = np.array(sorted(search(q)), dtype=np.int64)
        return out

    def predict(self, X, radius=None):
        """Number of stored boxes each query box intersects."""
        return np.array([len(self.tree_.query_intersects(q)) for q in self._queries(X, radius)],
                        dtype=np.int64)

    def contains_point(self, X):
        """Ids of stored boxes containing each point of ``X``."""
        return self.query(X, radius=None, mode="intersects")

    def query_box(self, box: Aabb, mode: str = "intersects") -> set[int]:
        check_is_fitted(self, "tree_")
        if mode == "within":
            return self.tree_.query_within(box)
        return self.tree_.query_intersects(box)
