import math

import numpy as np
import pytest

from glreduced.errors import BoxOutOfDomain, DimensionMismatch, GridMismatch, InvalidCounts, NonQuantizedFlux
from glreduced.field import (
    apply_operator,
    build_grid,
    energy,
    gauge_transform,
    gradient,
    link_phases,
    local_energy,
    periodic_counts,
    plaquette_angles,
    quadratic_form,
    side_for_quanta,
    total_flux_phase,
    trivial_links,
)
from glreduced.schemas import BoundaryCondition, Box, ComplexField


def random_field(grid, seed=0):
    rng = np.random.default_rng(seed)
    return ComplexField(grid=grid, values=rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))


def test_dirichlet_grid_stores_interior_sites():
    grid = build_grid((4.0, 4.0), 3)
    assert grid.shape == (3, 3)
    assert grid.spacing == (1.0, 1.0)
    assert grid.flux_quanta is None
    assert grid.volume == 16.0


def test_periodic_grid_spacing_and_flux():
    R = side_for_quanta(3)
    grid = build_grid((R, R, 2.0), (12, 12, 4), BoundaryCondition.MAGNETIC_PERIODIC)
    assert grid.flux_quanta == 3
    np.testing.assert_allclose(grid.spacing, (R / 12, R / 12, 0.5))


@pytest.mark.parametrize("extents, counts", [((4.0, 4.0), 1), ((4.0,), 3), ((4.0, -1.0), 3), ((4.0, 4.0), (3, 3, 3))])
def test_invalid_counts(extents, counts):
    with pytest.raises(InvalidCounts):
        build_grid(extents, counts)


def test_non_quantized_flux():
    with pytest.raises(NonQuantizedFlux):
        build_grid((3.0, 3.0), 8, BoundaryCondition.MAGNETIC_PERIODIC)


@pytest.mark.parametrize("n, expected", [(1, 16), (4, 16), (5, 20), (16, 32)])
def test_periodic_counts_rule(n, expected):
    counts = periodic_counts(n)
    assert counts == expected
    assert counts**2 >= 64 * n


def test_potential_dimension_mismatch(square):
    grid, _ = square
    with pytest.raises(DimensionMismatch):
        link_phases(grid, "F")


@pytest.mark.parametrize("bc, extent", [(BoundaryCondition.DIRICHLET, 4.0), (BoundaryCondition.MAGNETIC_PERIODIC, side_for_quanta(2))])
def test_plaquettes_carry_unit_field(bc, extent):
    grid = build_grid((extent, extent), 10, bc)
    angles = plaquette_angles(link_phases(grid, "A0"))
    h1, h2 = grid.spacing
    np.testing.assert_allclose(angles, -h1 * h2, atol=1e-12)


def test_periodic_total_flux_is_quantized(torus):
    _, links = torus
    assert abs(total_flux_phase(links) - 1.0) < 1e-10


def test_constant_field_energy_without_potential():
    R = side_for_quanta(1)
    grid = build_grid((R, R), 6, BoundaryCondition.MAGNETIC_PERIODIC)
    field = ComplexField.constant(grid, 0.5 + 0.5j)
    breakdown = energy(field, trivial_links(grid), b=0.7)
    density = 0.5
    assert breakdown.kinetic_raw == pytest.approx(0.0, abs=1e-14)
    assert breakdown.total == pytest.approx(grid.volume * (-density + 0.5 * density**2))


def test_zero_field_has_zero_energy(square):
    grid, links = square
    assert energy(ComplexField.zeros(grid), links, 0.9).total == 0.0


@pytest.mark.parametrize("fixture", ["square", "cube", "torus"])
def test_gauge_invariance(fixture, request):
    grid, links = request.getfixturevalue(fixture)
    field = random_field(grid, seed=1)
    theta = 2.0 * np.pi * np.random.default_rng(2).random(grid.shape)
    moved, moved_links = gauge_transform(field, links, theta)
    before = energy(field, links, 0.7).total
    after = energy(moved, moved_links, 0.7).total
    assert abs(after - before) <= 1e-12 * (1.0 + abs(before))


def test_gauge_transform_shape_mismatch(square):
    grid, links = square
    with pytest.raises(GridMismatch):
        gauge_transform(random_field(grid), links, np.zeros((2, 2)))


@pytest.mark.parametrize("fixture", ["square", "cube", "torus"])
def test_gradient_matches_finite_differences(fixture, request):
    grid, links = request.getfixturevalue(fixture)
    u = random_field(grid, seed=4)
    d = random_field(grid, seed=5).values
    d /= np.linalg.norm(d)
    b, eps = 0.6, 1e-5
    analytic = 2.0 * float(np.real(np.vdot(gradient(u, links, b).values, d)))
    plus = energy(u.with_values(u.values + eps * d), links, b).total
    minus = energy(u.with_values(u.values - eps * d), links, b).total
    assert (plus - minus) / (2.0 * eps) == pytest.approx(analytic, rel=1e-6)


@pytest.mark.parametrize("fixture", ["square", "torus"])
def test_operator_is_hermitian_and_positive(fixture, request):
    grid, links = request.getfixturevalue(fixture)
    u = random_field(grid, seed=6).values
    v = random_field(grid, seed=7).values
    lhs = np.vdot(v, apply_operator(u, links))
    rhs = np.conj(np.vdot(u, apply_operator(v, links)))
    assert abs(lhs - rhs) <= 1e-10 * abs(lhs)
    form = quadratic_form(u, links)
    assert form > 0.0
    assert form == pytest.approx(grid.volume_element * float(np.real(np.vdot(u, apply_operator(u, links)))))


def test_local_energy_over_whole_domain_is_total(torus):
    grid, links = torus
    field = random_field(grid, seed=8)
    whole = Box(lower=grid.lower, upper=grid.upper)
    assert local_energy(field, links, 0.8, whole).total == pytest.approx(energy(field, links, 0.8).total, rel=1e-12)


def test_local_energy_rejects_boxes_outside(square):
    grid, links = square
    with pytest.raises(BoxOutOfDomain):
        local_energy(random_field(grid), links, 0.8, Box(lower=(-3.0, -1.0), upper=(1.0, 1.0)))


def test_field_and_links_on_different_grids(square, cube):
    _, links = square
    grid, _ = cube
    with pytest.raises(GridMismatch):
        energy(random_field(grid), links, 0.5)


def test_side_for_quanta_roundtrip():
    assert side_for_quanta(4) ** 2 / (2.0 * math.pi) == pytest.approx(4.0)


@pytest.mark.parametrize("fixture", ["square", "cube"])
def test_diamagnetic_inequality(fixture, request):
    grid, links = request.getfixturevalue(fixture)
    u = random_field(grid, seed=9).values
    assert quadratic_form(np.abs(u), trivial_links(grid)) <= quadratic_form(u, links) * (1.0 + 1e-12)


def test_local_energy_is_additive_over_dirichlet_boxes(square):
    grid, links = square
    field = random_field(grid, seed=10)
    cut = 0.13
    left = Box(lower=grid.lower, upper=(cut, grid.upper[1]))
    right = Box(lower=(cut, grid.lower[1]), upper=grid.upper)
    parts = [local_energy(field, links, 0.8, box) for box in (left, right)]
    whole = energy(field, links, 0.8)
    assert sum(p.total for p in parts) == pytest.approx(whole.total, rel=1e-12)
    assert sum(p.kinetic_raw for p in parts) == pytest.approx(whole.kinetic_raw, rel=1e-12)
