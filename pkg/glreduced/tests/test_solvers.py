import numpy as np
import pytest

from glreduced.field import build_grid, link_phases
from glreduced.schemas import BoundaryCondition, SolverConfig, StepRule
from glreduced.solvers import (
    GradientDescent,
    counts_rule_2d,
    counts_rule_3d,
    estimate_g,
    fit_g_estimate,
    minimize_M0,
    minimize_m0,
    minimize_quotient,
    quotient_gradient,
    quotient_value,
)


def test_counts_rules():
    assert counts_rule_2d(8.0) == 39
    assert counts_rule_3d(8.0) == 31
    assert counts_rule_2d(1.0) == 8


@pytest.mark.parametrize("step_rule", list(StepRule))
def test_descent_finds_quadratic_minimum(step_rule):
    target = np.array([1.0 + 2.0j, -0.5j, 3.0])
    cfg = SolverConfig(grad_tolerance=1e-10, step_rule=step_rule)

    def objective(x):
        return float(np.sum(np.abs(x - target) ** 2)), x - target

    alg = GradientDescent(objective, np.zeros(3, dtype=complex), cfg, initial_step=0.5, residual=lambda x, g: float(np.max(np.abs(g))))
    outcome = alg.run()
    assert outcome.converged
    np.testing.assert_allclose(outcome.x, target, atol=1e-9)


def test_descent_applies_retraction():
    """Rayleigh quotient of diag(3, 1, 2) on the unit sphere"""
    cfg = SolverConfig(grad_tolerance=1e-9)
    weights = np.array([3.0, 1.0, 2.0])

    def objective(x):
        norm_sq = float(np.sum(np.abs(x) ** 2))
        value = float(np.sum(weights * np.abs(x) ** 2)) / norm_sq
        return value, (weights * x - value * x) / norm_sq

    def retract(x):
        return x / np.linalg.norm(x)

    alg = GradientDescent(
        objective, np.ones(3, dtype=complex), cfg, initial_step=0.1, residual=lambda x, g: float(np.max(np.abs(g))), retract=retract
    )
    outcome = alg.run()
    assert outcome.converged
    assert outcome.value == pytest.approx(1.0, abs=1e-12)
    assert abs(outcome.x[1]) == pytest.approx(1.0, abs=1e-8)



def test_b_zero_shortcut():
    result = minimize_m0(0.0, 4.0, 9)
    grid = result.field.grid
    assert result.converged
    assert result.iterations == 0
    assert result.value == pytest.approx(-0.5 * grid.volume_element * grid.site_count)
    np.testing.assert_array_equal(np.abs(result.field.values), 1.0)


def test_normal_state_above_critical_field(quick_cfg):
    result = minimize_m0(1.1, 4.0, 9, quick_cfg)
    assert result.value == 0.0
    assert result.converged
    assert not np.any(result.field.values)


@pytest.mark.parametrize("bad_b, bad_R", [(-0.1, 4.0), (0.5, 0.0)])
def test_invalid_inputs(bad_b, bad_R):
    with pytest.raises(ValueError):
        minimize_m0(bad_b, bad_R, 9)


@pytest.mark.parametrize("b", [0.0, 1.0, 1.2])
def test_quotient_needs_b_below_one(b):
    with pytest.raises(ValueError):
        minimize_quotient(b, 3.0, 5)


def test_m0_converges_and_satisfies_virial(quick_cfg):
    cfg = quick_cfg.with_updates(grad_tolerance=1e-9)
    result = minimize_m0(0.5, 4.0, 9, cfg)
    assert result.converged
    assert result.residual <= cfg.grad_tolerance
    assert -0.5 * 16.0 <= result.value < 0.0
    virial = abs(result.value + 0.5 * result.breakdown.l4_integral) / (1.0 + abs(result.value))
    assert virial <= 1e-6
    assert result.provenance.counts == (9, 9)


def test_m0_is_deterministic(quick_cfg):
    first = minimize_m0(0.6, 4.0, 9, quick_cfg)
    second = minimize_m0(0.6, 4.0, 9, quick_cfg)
    assert first.value == second.value
    np.testing.assert_array_equal(first.field.values, second.field.values)


def test_quotient_gradient_is_tangent_to_scaling():
    grid = build_grid((3.0, 3.0, 3.0), 5, BoundaryCondition.DIRICHLET)
    links = link_phases(grid, "F")
    rng = np.random.default_rng(0)
    u = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    g = quotient_gradient(u, links, 0.5)
    assert abs(np.real(np.vdot(u, g))) <= 1e-10 * np.linalg.norm(u) * np.linalg.norm(g)
    assert quotient_value(2.5 * u, links, 0.5) == pytest.approx(quotient_value(u, links, 0.5))


@pytest.mark.parametrize("scale", [1.0, 3.7])
def test_quotient_gradient_matches_finite_differences(scale):
    grid = build_grid((3.0, 3.0, 3.0), 5, BoundaryCondition.DIRICHLET)
    links = link_phases(grid, "F")
    rng = np.random.default_rng(1)
    u = scale * (rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))
    d = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    d *= np.linalg.norm(u) / np.linalg.norm(d)
    b, eps = 0.4, 1e-6
    analytic = 2.0 * float(np.real(np.vdot(quotient_gradient(u, links, b), d)))
    numeric = (quotient_value(u + eps * d, links, b) - quotient_value(u - eps * d, links, b)) / (2.0 * eps)
    assert numeric == pytest.approx(analytic, rel=1e-5, abs=1e-9)


def test_scale_optimization_identity(quick_cfg):
    """M0 = -1/2 Q^2 when the quotient minimum Q is negative"""
    cfg = quick_cfg.with_updates(restarts=2)
    energy = minimize_M0(0.2, 4.0, 7, cfg)
    quotient = minimize_quotient(0.2, 4.0, 7, cfg)
    assert quotient.value < 0.0
    assert energy.value == pytest.approx(-0.5 * quotient.value**2, rel=1e-4)
    assert quotient.breakdown.l4_integral == pytest.approx(1.0, rel=1e-10)


def test_fit_g_estimate_recovers_exact_model():
    values = [(R, -0.3 + 0.8 / R) for R in (8.0, 12.0, 16.0)]
    estimate = fit_g_estimate(0.5, values)
    assert estimate.extrapolated_g == pytest.approx(-0.3)
    assert estimate.fitted_C == pytest.approx(0.8)
    assert estimate.error_bar == pytest.approx(0.0, abs=1e-12)
    assert estimate.monotone


def test_fit_g_estimate_clamps_and_flags_non_monotone():
    values = [(8.0, -0.6), (12.0, -0.55), (16.0, -0.65)]
    estimate = fit_g_estimate(0.0, values)
    assert estimate.extrapolated_g == -0.5
    assert estimate.raw_fit_g < -0.5
    assert not estimate.monotone


@pytest.mark.parametrize("radii", [[8.0, 12.0], [8.0, 16.0, 12.0]])
def test_estimate_g_rejects_bad_radii(radii):
    with pytest.raises(ValueError):
        estimate_g(0.5, radii)


def test_estimate_g_with_replaced_solver(quick_cfg):
    calls = []

    def solve(b, R, counts, cfg):
        calls.append((b, R, counts))
        return minimize_m0(0.0, R, counts, cfg)

    estimate = estimate_g(0.0, [3.0, 4.0, 5.0], counts_rule=lambda R: 9, cfg=quick_cfg, solve=solve)
    assert [c[1] for c in calls] == [3.0, 4.0, 5.0]
    assert -0.5 <= estimate.extrapolated_g <= 0.0


def test_m0_is_non_decreasing_in_b(small_ctx):
    values = [small_ctx.m0(b, 4.0).value for b in (0.3, 0.5, 0.7)]
    assert values[0] < 0.0
    assert values[0] <= values[1] + 1e-8
    assert values[1] <= values[2] + 1e-8
    assert values[2] <= 1e-12
