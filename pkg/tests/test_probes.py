"""Probe displaceability: transversality, hit/exit parameters, grid scans."""

from fractions import Fraction

import pytest

from toric_fiber_lab import (
    DimensionUnsupported,
    NotTransverse,
    UnboundedPolytope,
    displaceable_by_probe,
    integrally_transverse,
    is_interior,
    make_polytope,
    probe_scan,
    probe_through,
)
from conftest import (
    interval_polytope,
    orbifold_interval_polytope,
    plane_blowup_polytope,
    square_polytope,
    weighted_plane_polytope,
)

F = Fraction


# -- transversality ------------------------------------------------------------


def test_transverse_square_facet():
    f = square_polytope().facets[0]  # inward normal (1, 0)
    assert integrally_transverse(f, (1, 0))
    assert integrally_transverse(f, (1, 7))
    assert not integrally_transverse(f, (2, 1))
    assert not integrally_transverse(f, (-1, 0))
    assert not integrally_transverse(f, (0, 1))


def test_transverse_uses_primitive_normal():
    f = orbifold_interval_polytope().facets[1]  # normal (-2), primitive (-1)
    assert integrally_transverse(f, (-1,))
    assert not integrally_transverse(f, (-2,))


def test_transverse_rejects_zero_direction():
    f = square_polytope().facets[0]
    with pytest.raises(ValueError):
        integrally_transverse(f, (0, 0))


# -- single probes ---------------------------------------------------------------


def test_probe_through_interval():
    P = interval_polytope()
    probe = probe_through(P, (F(3, 10),), 0, (1,))
    assert probe is not None
    assert probe.base == (F(0),)
    assert probe.exit_parameter == F(1)
    # the fiber sits at parameter 3/10 < 1/2 = half of the exit parameter


def test_probe_refuses_midpoint():
    P = interval_polytope()
    assert probe_through(P, (F(1, 2),), 0, (1,)) is None
    assert probe_through(P, (F(1, 2),), 1, (-1,)) is None
    assert displaceable_by_probe(P, (F(1, 2),), bound=5) is None


def test_probe_rejects_non_transverse_direction():
    P = square_polytope()
    with pytest.raises(NotTransverse):
        probe_through(P, (F(0), F(0)), 0, (0, 1))
    with pytest.raises(NotTransverse):
        probe_through(P, (F(0), F(0)), 0, (2, 0))


def test_probe_hit_parameter_is_presentation_invariant():
    # the same segment [0, 1] cut out by (-2)x >= -2 or by (-1)x >= -1:
    # probes from the right endpoint agree because the hit parameter divides
    # the facet value by the pairing with the full normal, not the primitive
    doubled = orbifold_interval_polytope()  # facet 1 has normal (-2)
    reduced = make_polytope(1, [((1,), F(0)), ((-1,), F(-1))])
    a = probe_through(doubled, (F(3, 4),), 1, (-1,))
    b = probe_through(reduced, (F(3, 4),), 1, (-1,))
    assert a is not None and b is not None
    assert a.base == b.base == (F(1),)
    assert a.exit_parameter == b.exit_parameter == F(1)


def test_probe_can_be_unbounded():
    P = plane_blowup_polytope()
    probe = probe_through(P, (F(2), F(1)), 1, (0, 1))
    assert probe is not None
    assert probe.base == (F(2), F(0))
    assert probe.exit_parameter is None  # the ray never leaves the polytope


def test_probe_base_on_open_facet_only():
    # aiming through a corner of the square lands the base on two facets
    P = square_polytope()
    assert probe_through(P, (F(-1, 2), F(-1, 2)), 0, (1, 1)) is None


def test_probe_interior_along_segment():
    P = weighted_plane_polytope(3, 5)
    probe = displaceable_by_probe(P, (F(1, 4), F(1, 4)))
    assert probe is not None
    assert probe.exit_parameter is not None
    for k in range(1, 9):
        t = probe.exit_parameter * F(k, 9)
        pt = tuple(b + t * a for b, a in zip(probe.base, probe.direction))
        assert is_interior(P, pt)


def test_square_center_survives_all_probes():
    assert displaceable_by_probe(square_polytope(), (F(0), F(0)), bound=3) is None


def test_interval_deciles():
    P = interval_polytope()
    for k in range(1, 10):
        lam = (F(k, 10),)
        probe = displaceable_by_probe(P, lam, bound=1)
        if k == 5:
            assert probe is None
        else:
            assert probe is not None


def test_probe_existence_monotone_in_bound():
    P = weighted_plane_polytope(3, 5)
    pts = [(F(1, 4), F(1, 4)), (F(1, 2), F(3)), (F(5, 2), F(1, 4))]
    for lam in pts:
        if displaceable_by_probe(P, lam, bound=1) is not None:
            assert displaceable_by_probe(P, lam, bound=3) is not None


def test_probe_equivariance_under_shear():
    # shear U = [[1,1],[0,1]] maps the square onto a parallelogram; displaceable
    # fibers map to displaceable fibers once the direction budget is doubled to
    # absorb the operator norm of U
    square = square_polytope()
    sheared = make_polytope(
        2,
        [
            ((1, -1), F(-1)),
            ((-1, 1), F(-1)),
            ((0, 1), F(-1)),
            ((0, -1), F(-1)),
        ],
    )
    for lam in [(F(0), F(1, 2)), (F(1, 2), F(0)), (F(-1, 2), F(-1, 4))]:
        if displaceable_by_probe(square, lam, bound=1) is not None:
            image = (lam[0] + lam[1], lam[1])
            assert is_interior(sheared, image)
            assert displaceable_by_probe(sheared, image, bound=2) is not None


# -- grid scans -------------------------------------------------------------------


def test_scan_square():
    grid = probe_scan(square_polytope(), 8)
    assert len(grid) == 49  # 7x7 interior lattice
    survivors = [lam for lam, probe in grid.items() if probe is None]
    assert survivors == [(F(0), F(0))]


def test_scan_interval():
    grid = probe_scan(interval_polytope(), 10)
    assert len(grid) == 9
    survivors = [lam for lam, probe in grid.items() if probe is None]
    assert survivors == [(F(1, 2),)]


def test_scan_weighted_35():
    grid = probe_scan(weighted_plane_polytope(3, 5), 16)
    survivors = [lam for lam, probe in grid.items() if probe is None]
    assert len(survivors) == 12


def test_scan_rejects_unbounded():
    with pytest.raises(UnboundedPolytope):
        probe_scan(plane_blowup_polytope(), 4)


def test_scan_rejects_high_dimension():
    cube = make_polytope(
        3,
        [
            ((1, 0, 0), F(0)),
            ((0, 1, 0), F(0)),
            ((0, 0, 1), F(0)),
            ((-1, 0, 0), F(-1)),
            ((0, -1, 0), F(-1)),
            ((0, 0, -1), F(-1)),
        ],
    )
    with pytest.raises(DimensionUnsupported):
        probe_scan(cube, 4)


def test_scan_rejects_bad_resolution():
    with pytest.raises(ValueError):
        probe_scan(square_polytope(), 0)
