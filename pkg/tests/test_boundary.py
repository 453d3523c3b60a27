import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbcrtree.boundary import (
    BoundaryError,
    CuboidCell,
    Periodic,
    Unbounded,
    boundary_from_json,
    boundary_to_json,
    parse_boundary_spec,
    restrict_position,
    restrict_vector,
)

CELL = Periodic.from_bounds([0.0], [10.0])

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("p, expected", [(12.5, 2.5), (10.0, 0.0), (-0.5, 9.5)])
def test_restrict_position_examples(p, expected):
    assert restrict_position([p], CELL) == (expected,)


@pytest.mark.parametrize("v, expected", [(8.0, -2.0), (0.0, 0.0), (5.0, -5.0), (-7.0, 3.0)])
def test_restrict_vector_examples(v, expected):
    assert restrict_vector([v], CELL) == (expected,)


def test_half_open_edges():
    assert restrict_vector([-5.0], CELL) == (-5.0,)
    # tiny negatives must not round up onto the excluded upper edge
    assert restrict_position([-1e-18], CELL) == (0.0,)
    assert restrict_position([-1e-300], CELL)[0] < 10.0


def test_far_outside_inputs_wrap_directly():
    assert restrict_position([1e6 + 2.5], CELL) == pytest.approx((2.5,))
    assert restrict_vector([-1e6 - 3.0], CELL) == pytest.approx((-3.0,))


def test_offset_cell():
    b = Periodic.from_bounds([-5.0, 2.0], [5.0, 4.0])
    assert restrict_position([6.0, 1.5], b) == pytest.approx((-4.0, 3.5))
    assert restrict_vector([6.0, 1.5], b) == pytest.approx((-4.0, -0.5))


def test_unbounded_identity():
    b = Unbounded()
    assert restrict_position([12.5, -3.0], b) == (12.5, -3.0)
    assert restrict_vector([8.0, 1e9], b) == (8.0, 1e9)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(BoundaryError):
        restrict_position([bad], CELL)
    with pytest.raises(BoundaryError):
        restrict_vector([bad], Unbounded())


def test_dimension_mismatch():
    with pytest.raises(BoundaryError):
        restrict_position([1.0, 2.0], CELL)


@pytest.mark.parametrize("lower, upper", [([0.0], [0.0]), ([1.0], [0.0]), ([0.0, 0.0], [1.0]),
                                          ([0.0], [math.inf]), ([], [])])
def test_invalid_cells(lower, upper):
    with pytest.raises(BoundaryError):
        CuboidCell(tuple(lower), tuple(upper))


def test_json_roundtrip():
    b = Periodic.from_bounds([0.0, -1.0], [10.0, 1.0])
    doc = boundary_to_json(b)
    assert doc == {"kind": "periodic", "lower": [0.0, -1.0], "upper": [10.0, 1.0]}
    assert boundary_from_json(doc) == b
    assert boundary_from_json({"kind": "unbounded"}) == Unbounded()
    with pytest.raises(BoundaryError):
        boundary_from_json({"kind": "triclinic"})
    with pytest.raises(BoundaryError):
        boundary_from_json({"kind": "periodic", "lower": [0.0]})


def test_parse_spec():
    assert parse_boundary_spec("0,0:10,10") == Periodic.from_bounds([0, 0], [10, 10])
    assert parse_boundary_spec("unbounded") == Unbounded()
    for bad in ("0,0", "a:b", "0,0:10"):
        with pytest.raises(BoundaryError):
            parse_boundary_spec(bad)


@settings(max_examples=300, deadline=None)
@given(p=finite, n=st.integers(-3, 3), L=st.floats(0.5, 50.0))
def test_position_periodicity(p, n, L):
    b = Periodic.from_bounds([0.0], [L])
    a = restrict_position([p], b)[0]
    c = restrict_position([p + n * L], b)[0]
    assert 0.0 <= a < L and 0.0 <= c < L
    # p + n*L is itself rounded; compare on the circle at the rounding scale
    tol = 2 * math.ulp(abs(p) + abs(n * L) + L)
    assert abs(restrict_vector([a - c], b)[0]) <= tol


@settings(max_examples=300, deadline=None)
@given(v=finite, L=st.floats(0.5, 50.0))
def test_vector_range_and_congruence(v, L):
    b = Periodic.from_bounds([0.0], [L])
    r = restrict_vector([v], b)[0]
    assert -L / 2 <= r < L / 2
    k = (r - v) / L
    assert abs(k - round(k)) * L <= 1e-9 * L + 4 * math.ulp(abs(v) + L)


def test_min_image_triangle_inequality(rng):
    b = Periodic.from_bounds([0.0, 0.0, 0.0], [10.0, 3.0, 7.0])
    for _ in range(5000):
        a = rng.uniform(-30, 30, size=3)
        c = rng.uniform(-30, 30, size=3)
        ab = np.abs(restrict_vector(a + c, b))
        assert np.all(ab <= np.abs(restrict_vector(a, b)) + np.abs(restrict_vector(c, b)) + 1e-12)


def test_unbounded_identity_random(rng):
    b = Unbounded()
    for _ in range(200):
        v = tuple(rng.normal(scale=1e4, size=3))
        assert restrict_position(v, b) == v
        assert restrict_vector(v, b) == v
