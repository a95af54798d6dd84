import numpy as np
import pytest

from glreduced.bulk import (
    PartitionSpec,
    bulk_counts,
    cell_statistics,
    check_cell_homogeneity,
    check_gap_defect,
    check_thm_l2,
    check_thm_l4,
    default_params,
    solve_periodic_gl,
    tile_boxes,
)
from glreduced.checks import SolveContext
from glreduced.errors import NonQuantizedFlux, PartitionInvalid
from glreduced.field import build_grid
from glreduced.schemas import BoundaryCondition, ReducedParams, SolverConfig
from glreduced.solvers import minimize_m0
from glreduced.utils.formatter import plot_series


@pytest.fixture(scope="module")
def periodic_result():
    params = ReducedParams.from_quanta(0.8, 1, L=2.0)
    return solve_periodic_gl(params, (8, 8, 4), SolverConfig(grad_tolerance=1e-8, restarts=1))


def test_default_params_and_counts():
    params = default_params(0.9, n=4)
    assert params.L == params.R
    assert params.flux_quanta == pytest.approx(4.0)
    assert bulk_counts(params) == (16, 16, 16)


def test_reduced_params_validation():
    with pytest.raises(ValueError):
        ReducedParams(b=0.0, R=1.0, L=1.0)
    with pytest.raises(ValueError):
        ReducedParams(b=0.5, R=1.0, L=-1.0)


def test_non_quantized_cross_section():
    with pytest.raises(NonQuantizedFlux):
        solve_periodic_gl(ReducedParams(b=0.8, R=3.0, L=3.0), (8, 8, 4))


def test_normal_state_above_critical_field():
    result = solve_periodic_gl(ReducedParams.from_quanta(1.05, 1, L=2.0), (8, 8, 4))
    assert result.value == 0.0
    assert result.diagnostics["max_density"] == 0.0


def test_periodic_minimizer_diagnostics(periodic_result):
    d = periodic_result.diagnostics
    assert periodic_result.converged
    assert periodic_result.value < 0.0
    assert d["pairing_defect"] <= 1e-6
    assert d["gl_residual"] <= 1e-8
    assert d["energy_per_volume"] == pytest.approx(periodic_result.value / periodic_result.field.grid.volume)
    assert 0.0 < d["max_density"] < 1.0


@pytest.mark.parametrize("offset", [None, (0.5, 0.25, 0.0), (0.3, 0.7, 0.5)])
def test_tiles_cover_the_sample(periodic_result, offset):
    spec = PartitionSpec(divisions=(2, 2, 2), offset=offset)
    stats = cell_statistics(periodic_result, spec)
    grid = periodic_result.field.grid
    assert len(stats.records) == 8
    assert sum(r.sites for r in stats.records) == grid.site_count
    assert sum(r.energy.total for r in stats.records) == pytest.approx(periodic_result.value, rel=1e-10)
    assert stats.kinetic_correction == pytest.approx(0.0, abs=1e-10 * abs(periodic_result.value))
    mean = np.mean(np.abs(periodic_result.field.values) ** 2)
    assert sum(r.mean_density * r.sites for r in stats.records) / grid.site_count == pytest.approx(mean)


def test_wrapped_tiles_are_split():
    grid = build_grid((4.0, 4.0), 8, BoundaryCondition.DIRICHLET)
    assert all(len(pieces) == 1 for _, pieces in tile_boxes(grid, PartitionSpec(divisions=(2, 2))))
    R = np.sqrt(2.0 * np.pi)
    torus = build_grid((R, R), 8, BoundaryCondition.MAGNETIC_PERIODIC)
    tiles = tile_boxes(torus, PartitionSpec(divisions=(2, 2), offset=(0.5, 0.0)))
    assert max(len(pieces) for _, pieces in tiles) >= 2


@pytest.mark.parametrize(
    "divisions, offset",
    [((2, 2), None), ((0, 2, 2), None), ((2, 2, 2), (1.0, 0.0, 0.0)), ((2, 2, 16), None), ((2, 2, 2), (0.5, 0.5))],
)
def test_invalid_partitions(periodic_result, divisions, offset):
    with pytest.raises(PartitionInvalid):
        cell_statistics(periodic_result, PartitionSpec(divisions=divisions, offset=offset))


def test_shifted_tiling_needs_periodic_grid():
    result = minimize_m0(0.0, 4.0, 9)
    with pytest.raises(PartitionInvalid):
        cell_statistics(result, PartitionSpec(divisions=(2, 2), offset=(0.5, 0.0)))
    stats = cell_statistics(result, PartitionSpec(divisions=(3, 3)))
    assert sum(r.sites for r in stats.records) == 81


@pytest.fixture(scope="module")
def bulk_ctx():
    return SolveContext(SolverConfig(grad_tolerance=1e-8, restarts=1, seed=3), abrikosov_quanta=(1, 2))


def one_quantum(b):
    return default_params(b, n=1)


def test_density_ratio_report(bulk_ctx):
    report = check_thm_l4([0.8, 1.05], one_quantum, ctx=bulk_ctx)
    c = report.fitted_constants
    assert c["E_Ab"] < 0.0
    assert c["rho4@b=0.8"] > 0.0
    mu1 = c["mu1@b=0.8"]
    assert 0.95 < mu1 < 1.05
    assert c["rho4_mu1@b=0.8"] == pytest.approx(c["rho4@b=0.8"] * 0.2**2 / (1.0 - 0.8 * mu1) ** 2)
    assert any("b=1.05" in note for note in report.notes)
    assert not any("power-mean" in note for note in report.notes)
    assert len(report.points) == 2
    assert plot_series([report])["rho4"] == [(0.8, c["rho4@b=0.8"])]


def test_density_ratios_need_increasing_b(bulk_ctx):
    with pytest.raises(ValueError):
        check_thm_l4([0.9, 0.8], one_quantum, ctx=bulk_ctx)


def test_lll_proximity_report(bulk_ctx):
    report = check_thm_l2([0.8], one_quantum, ctx=bulk_ctx)
    c = report.fitted_constants
    assert c["rho2@b=0.8"] > 0.0
    assert c["lll_proximity_C@b=0.8"] > 0.0
    assert c["lll_proximity_growth"] == 1.0
    assert report.provenance["b_list"] == [0.8]


def test_gap_defect_report(bulk_ctx):
    report = check_gap_defect([0.8, 1.05], one_quantum, ctx=bulk_ctx)
    c = report.fitted_constants
    assert c["gamma@b=0.8"] == pytest.approx(0.25)
    for p in (2, 4, 6):
        assert c[f"C{p}@b=0.8"] >= 0.0
        assert c[f"C{p}_growth"] == 1.0
    assert c["C2@b=0.8"] <= 2.0
    assert report.holds
    assert any("b=1.05" in note for note in report.notes)


def test_cell_homogeneity_on_shifted_tilings(bulk_ctx):
    report = check_cell_homogeneity(0.8, params_rule=one_quantum, ctx=bulk_ctx)
    pairing = [p for p in report.points if p.label == "periodic stationarity pairing"]
    assert pairing and pairing[0].holds
    assert abs(report.fitted_constants["partition_energy_defect@offset=0,0,0"]) <= 1e-8
    assert "quartic_spread@offset=0.5,0.5,0" in report.fitted_constants
