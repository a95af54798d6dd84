from types import SimpleNamespace

import numpy as np
import pytest

from glreduced.abrikosov import (
    abrikosov_energy,
    abrikosov_tensors,
    estimate_EAb,
    fit_near_critical,
    lattice_value,
    minimize_cR,
    polynomial_gradient,
    polynomial_value,
    vortex_lattices,
)
from glreduced.errors import DimensionMismatch
from glreduced.field import side_for_quanta
from glreduced.schemas import GEstimate
from glreduced.spectral import lll_basis


@pytest.fixture(scope="module")
def basis1():
    return lll_basis(side_for_quanta(1), 16)


@pytest.fixture(scope="module")
def basis2():
    return lll_basis(side_for_quanta(2), 16)


def test_polynomial_gradient_matches_finite_differences(basis2):
    tensors = abrikosov_tensors(basis2)
    rng = np.random.default_rng(0)
    c = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    d = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    eps = 1e-6
    numeric = (polynomial_value(c + eps * d, tensors) - polynomial_value(c - eps * d, tensors)) / (2.0 * eps)
    analytic = 2.0 * float(np.real(np.vdot(polynomial_gradient(c, tensors), d)))
    assert numeric == pytest.approx(analytic, rel=1e-7)


def test_energy_matches_the_field_integral(basis2):
    c = np.array([0.7 - 0.2j, 1.1j])
    v = np.einsum("m,mij->ij", c, basis2.vectors)
    dV = basis2.grid.volume_element
    density = np.abs(v) ** 2
    expected = dV * float(np.sum(0.5 * density**2 - density))
    breakdown = abrikosov_energy(c, basis2)
    assert breakdown.total == pytest.approx(expected, rel=1e-12)
    assert breakdown.kinetic == 0.0
    assert breakdown.l2_integral == pytest.approx(float(np.sum(np.abs(c) ** 2)), rel=1e-10)


def test_energy_rejects_wrong_coefficient_count(basis2):
    with pytest.raises(DimensionMismatch):
        abrikosov_energy(np.ones(3), basis2)


def test_one_mode_closed_form(basis1):
    result = minimize_cR(1, 16, basis=basis1, restarts=2)
    f = basis1.vectors[0]
    dV = basis1.grid.volume_element
    s2 = dV * float(np.sum(np.abs(f) ** 2))
    s4 = dV * float(np.sum(np.abs(f) ** 4))
    closed = -(s2**2) / (2.0 * s4)
    assert result.value == pytest.approx(closed, rel=1e-8)
    assert result.converged


@pytest.mark.parametrize("n", [1, 2, 3])
def test_abrikosov_ratio_range_and_pairing(n):
    result = minimize_cR(n, restarts=4)
    assert -0.5 <= result.value_over_area < 0.0
    assert result.pairing_defect <= 1e-6 * result.R**2
    assert result.value == pytest.approx(-0.5 * result.l4_integral, rel=1e-6)


@pytest.mark.parametrize("n, divisor_sum", [(1, 1), (2, 3), (4, 7), (6, 12)])
def test_vortex_lattices_have_index_n(n, divisor_sum):
    shapes = vortex_lattices(n)
    assert len(shapes) == divisor_sum
    assert all(len(residues) == n for residues in shapes)


@pytest.mark.parametrize(
    "n, expected",
    [(1, -0.423607), (2, -0.423607), (3, -0.394207), (4, -0.429039), (5, -0.423607), (6, -0.418578)],
)
def test_lattice_values_on_square_cells(n, expected):
    # square lattice beta = theta_3(e^-pi)^2; triangular beta = 1.1596 bounds all of them
    assert lattice_value(n) == pytest.approx(expected, rel=1e-4)
    assert lattice_value(n) >= -0.5 / 1.1596


def test_lattice_values_are_not_monotone_in_n():
    assert lattice_value(3) > lattice_value(2)
    assert abs(lattice_value(6) - lattice_value(5)) > abs(lattice_value(2) - lattice_value(1))


@pytest.mark.parametrize("n", [3, 4])
def test_minimize_cR_reaches_the_lattice_value(n):
    result = minimize_cR(n, restarts=0)
    assert result.lattice_value == pytest.approx(lattice_value(n))
    assert result.value_over_area <= result.lattice_value + 0.01 * abs(result.lattice_value)
    assert result.converged


def test_tiled_cell_is_no_worse():
    one = minimize_cR(1, restarts=2)
    four = minimize_cR(4, restarts=2)
    assert four.value_over_area <= one.value_over_area + 1e-3


def test_minimize_cR_rejects_bad_n():
    with pytest.raises(ValueError):
        minimize_cR(0)


def test_minimize_cR_checks_basis_dimension(basis2):
    with pytest.raises(DimensionMismatch):
        minimize_cR(1, basis=basis2)


def test_fit_near_critical_exact():
    estimates = [
        GEstimate(b=b, values=[], extrapolated_g=-0.4 * (1.0 - b) ** 2, raw_fit_g=0.0, fitted_C=0.0, fit_residual=0.0, error_bar=0.0, monotone=True)
        for b in (0.85, 0.9, 0.95)
    ]
    assert fit_near_critical(estimates) == pytest.approx(-0.4)


def test_cross_check_uses_the_continuum_distance():
    estimates = [
        GEstimate(b=b, values=[], extrapolated_g=-0.4 * (1.0 - b) ** 2, raw_fit_g=0.0, fitted_C=0.0, fit_residual=0.0, error_bar=0.0, monotone=True)
        for b in (0.85, 0.9, 0.95)
    ]

    def minimize(n, counts):
        return SimpleNamespace(R=side_for_quanta(n), value_over_area=-0.42)

    estimate = estimate_EAb([1], minimize=minimize, g_estimates=estimates, mu1=1.02)
    assert estimate.cross_check_EAb == pytest.approx(-0.4)
    np.testing.assert_allclose([ratio for _, ratio in estimate.cross_check_points], [-0.4] * 3)
    assert estimate.cross_check_EAb_mu1 == pytest.approx(fit_near_critical(estimates, 1.02))
    assert estimate.cross_check_EAb_mu1 < -0.4


def test_estimate_EAb_tail_and_differences():
    ratios = {1: -0.40, 2: -0.42, 3: -0.425}

    def minimize(n, counts):
        return SimpleNamespace(R=side_for_quanta(n), value_over_area=ratios[n])

    estimate = estimate_EAb([1, 2, 3], minimize=minimize)
    assert estimate.extrapolated_EAb == -0.425
    np.testing.assert_allclose(estimate.successive_differences, [-0.02, -0.005])
    assert estimate.cross_check_EAb is None
    assert [s[0] for s in estimate.sequence] == [1, 2, 3]


@pytest.mark.parametrize("n_list", [[], [2, 1], [1, 1]])
def test_estimate_EAb_rejects_bad_sequences(n_list):
    with pytest.raises(ValueError):
        estimate_EAb(n_list)


def test_energy_is_invariant_under_a_global_phase(basis2):
    c = np.array([0.7 - 0.2j, 1.1j])
    turned = abrikosov_energy(np.exp(0.83j) * c, basis2)
    assert turned.total == pytest.approx(abrikosov_energy(c, basis2).total, rel=1e-12)
