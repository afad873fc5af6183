"""Shared example polytopes.

The recurring cast: the interval [0,1], the blow-up of the affine plane, the
weighted projective planes P(1,n1,n2), the orbifold interval P(1,2), the
square, and the square with one corner cut at depth a (the blow-up family).
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from toric_fiber_lab import make_polytope

F = Fraction


def interval_polytope():
    return make_polytope(1, [((1,), F(0)), ((-1,), F(-1))])


def plane_blowup_polytope():
    # {x >= 0, y >= 0, x + y >= 1}: unbounded, vertices (1,0) and (0,1)
    return make_polytope(2, [((1, 0), F(0)), ((0, 1), F(0)), ((1, 1), F(1))])


def weighted_plane_polytope(n1: int, n2: int):
    return make_polytope(
        2, [((1, 0), F(0)), ((0, 1), F(0)), ((-n2, -n1), F(-n1 * n2))]
    )


def orbifold_interval_polytope():
    # [0,1] presented with the non-primitive outer normal (-2)
    return make_polytope(1, [((1,), F(0)), ((-2,), F(-2))])


def square_polytope():
    return make_polytope(
        2, [((1, 0), F(-1)), ((0, 1), F(-1)), ((-1, 0), F(-1)), ((0, -1), F(-1))]
    )


def corner_cut_polytope(a):
    # [-1,1]^2 with the (1,1) corner cut by x + y <= 2 - a
    a = F(a)
    return make_polytope(
        2,
        [
            ((1, 0), F(-1)),
            ((0, 1), F(-1)),
            ((-1, 0), F(-1)),
            ((0, -1), F(-1)),
            ((-1, -1), -(2 - a)),
        ],
    )


@pytest.fixture
def interval():
    return interval_polytope()


@pytest.fixture
def plane_blowup():
    return plane_blowup_polytope()


@pytest.fixture
def weighted_35():
    return weighted_plane_polytope(3, 5)


@pytest.fixture
def orbifold_interval():
    return orbifold_interval_polytope()


@pytest.fixture
def square():
    return square_polytope()


INTERVAL_JSON = (
    '{"dimension": 1, "facets": ['
    '{"normal": [1], "offset": "0"}, {"normal": [-1], "offset": "-1"}]}'
)

WEIGHTED_35_JSON = (
    '{"dimension": 2, "facets": ['
    '{"normal": [1, 0], "offset": 0}, {"normal": [0, 1], "offset": 0}, '
    '{"normal": [-5, -3], "offset": -15}]}'
)
