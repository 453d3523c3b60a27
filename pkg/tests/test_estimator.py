import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pbcrtree.aabb import make_aabb
from pbcrtree.boundary import Periodic
from pbcrtree.estimator import PeriodicBoxIndex
from pbcrtree.oracle import FlatStore


def test_params_and_clone():
    est = PeriodicBoxIndex(boundary=(0.0, 10.0), min_entries=2, max_entries=6)
    assert est.get_params() == {"boundary": (0.0, 10.0), "min_entries": 2, "max_entries": 6}
    est2 = clone(est).set_params(max_entries=4)
    assert est2.max_entries == 4 and est.max_entries == 6


def test_fit_query_matches_oracle(rng):
    X = rng.uniform(0, 10, size=(300, 2))
    R = rng.uniform(0, 0.8, size=(300, 2))
    est = PeriodicBoxIndex(boundary=(0.0, 10.0)).fit(X, radius=R)
    b = est.boundary_
    store = FlatStore(b, [(i, make_aabb(X[i], R[i], b)) for i in range(300)])
    Q = rng.uniform(0, 10, size=(40, 2))
    got = est.query(Q, radius=1.0)
    within = est.query(Q, radius=1.5, mode="within")
    for k in range(40):
        assert set(got[k].tolist()) == store.scan_intersects(make_aabb(Q[k], (1.0, 1.0), b))
        assert set(within[k].tolist()) == store.scan_within(make_aabb(Q[k], (1.5, 1.5), b))
    assert est.predict(Q, radius=1.0).tolist() == [len(g) for g in got]


def test_custom_ids_and_points():
    est = PeriodicBoxIndex(boundary="0:10").fit([[0.5], [9.5], [5.0]], radius=0.4, ids=[10, 20, 30])
    assert est.query([[0.0]], radius=[1.0])[0].tolist() == [10, 20]
    assert est.contains_point([[9.8]])[0].tolist() == [20]


def test_validation_errors():
    with pytest.raises(NotFittedError):
        PeriodicBoxIndex().query([[0.0, 0.0]])
    est = PeriodicBoxIndex(boundary=(0.0, 10.0))
    with pytest.raises(ValueError):
        est.fit([[1.0, np.nan]])
    with pytest.raises(ValueError):
        est.fit([[1.0, 1.0]], radius=-1)
    with pytest.raises(ValueError):
        est.fit([[1.0, 1.0], [2.0, 2.0]], ids=[1, 1])
    with pytest.raises(ValueError):
        PeriodicBoxIndex(boundary=Periodic.from_bounds([0], [1])).fit([[0.5, 0.5]])
    est.fit([[1.0, 1.0]])
    with pytest.raises(ValueError):
        est.query([[1.0, 1.0, 1.0]])
    with pytest.raises(ValueError):
        est.query([[1.0, 1.0]], mode="nearest")


def test_unbounded_default():
    est = PeriodicBoxIndex().fit([[0.5], [9.5]], radius=0.4)
    assert est.query([[0.0]], radius=1.0)[0].tolist() == [0]
