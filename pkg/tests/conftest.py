import itertools

import numpy as np
import pytest

from pbcrtree.aabb import Aabb, make_aabb
from pbcrtree.boundary import Periodic, Unbounded


def cell(dim, size=10.0, lower=0.0):
    return Periodic.from_bounds([lower] * dim, [lower + size] * dim)


def random_box(rng, b, dim, max_radius, lower=0.0, size=10.0):
    center = rng.uniform(lower, lower + size, size=dim)
    radius = rng.uniform(0.0, max_radius, size=dim)
    return make_aabb(center, radius, b)


def images_1d(c, period):
    return [c + n * period for n in (-1, 0, 1)]


def nearest_image(c_ref, c, period):
    """Image of ``c`` nearest to ``c_ref`` by explicit enumeration (ties: lowest image)."""
    return min(images_1d(c, period), key=lambda x: abs(x - c_ref))


def expand_by_enumeration(r1, r2, period):
    """1-D reference for box expansion: union with the nearest enumerated image, no wrapping."""
    (c1,), (h1,) = r1
    (c2,), (h2,) = r2
    t = nearest_image(c1, c2, period)
    lo = min(c1 - h1, t - h2)
    hi = max(c1 + h1, t + h2)
    return (lo + hi) / 2, (hi - lo) / 2


def point_in_box_by_enumeration(r, p, periods):
    return any(
        all(abs(c - (x + n * L)) <= h for c, h, x, n, L in zip(r.center, r.radius, p, shift, periods))
        for shift in itertools.product((-1, 0, 1), repeat=len(periods))
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture
def cell1():
    return cell(1)


@pytest.fixture
def unbounded():
    return Unbounded()
