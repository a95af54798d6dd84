import math
from types import SimpleNamespace

import pytest

from glreduced.checks import (
    SolveContext,
    check_g_bounds,
    check_gauge_invariance,
    check_gradient_fd,
    check_ka,
    check_L4_bounds,
    check_lem1,
    check_lem2,
    check_nf,
    check_quotient_identity,
    check_spectrum3d_exact,
    check_virial,
    sweep_report,
)
from glreduced.checks.lemmas import KA_FIT_NOTE, constant_growth, fit_nf_constant, make_point
from glreduced.checks.registry import SUITE_NAMES, CheckRegistry, VerifyOptions
from glreduced.errors import NotApplicable
from glreduced.schemas import InequalityReport, SolverConfig
from glreduced.solvers.thermodynamic import fit_g_estimate


def report_with_constant(value, holds=True):
    point = make_point("p", 0.0 if holds else 1.0, 0.5)
    return InequalityReport.from_points("part", [point], fitted_constants={"C": value})


def test_make_point_applies_slack():
    assert make_point("a", 1.0, 0.9, slack=0.2).holds
    assert not make_point("a", 1.0, 0.9, slack=0.05).holds


@pytest.mark.parametrize(
    "constants, expected",
    [([1.0, 2.0, 1.5], 0.75), ([1.0, 3.0], 3.0), ([5.0], 1.0), ([-1.0, 1e-12], 1.0)],
)
def test_constant_growth(constants, expected):
    assert constant_growth(constants) == pytest.approx(expected)


def test_from_points_keeps_the_worst_point():
    points = [make_point("a", 0.0, 1.0), make_point("b", 2.0, 1.0), make_point("c", 1.0, 1.0)]
    report = InequalityReport.from_points("demo", points)
    assert not report.holds
    assert (report.lhs, report.rhs) == (2.0, 1.0)
    assert InequalityReport.from_points("empty", []).holds


def test_sweep_report_asserts_constant_growth():
    growing = [report_with_constant(1.0), report_with_constant(3.0)]
    asserted = sweep_report("sweep", growing)
    assert not asserted.holds
    assert asserted.fitted_constants["C_growth"] == pytest.approx(3.0)

    reported = sweep_report("sweep", growing, asserted_growth=False)
    assert reported.holds
    assert any("grows" in note for note in reported.notes)


def test_virial_on_a_converged_minimizer(small_ctx):
    result = small_ctx.m0(0.5, 4.0)
    report = check_virial(result)
    assert report.holds
    assert report.fitted_constants["defect"] <= 1e-6


def test_virial_is_not_applicable_to_quotients(small_ctx):
    quotient = small_ctx.quotient(0.2, 4.0)
    with pytest.raises(NotApplicable):
        check_virial(quotient)


def test_virial_records_an_unconverged_minimizer(small_ctx):
    stalled = small_ctx.m0(0.5, 4.0).model_copy(update={"converged": False})
    report = check_virial(stalled)
    assert not report.holds
    assert any(not p.holds and "converged" in p.label for p in report.points)
    assert any("did not converge" in note for note in report.notes)
    relaxed = check_virial(stalled, require_converged=False)
    assert relaxed.holds
    assert relaxed.notes == []


def test_context_memoizes(small_ctx):
    assert small_ctx.m0(0.5, 4.0) is small_ctx.m0(0.5, 4.0)
    assert small_ctx.g_hat(0.0) is small_ctx.g_hat(0.0)


def test_context_reuses_disk_cache(quick_cfg, cache):
    first = SolveContext(quick_cfg, cache, counts_2d=lambda R: 9).m0(0.5, 4.0)
    second = SolveContext(quick_cfg, cache, counts_2d=lambda R: 9).m0(0.5, 4.0)
    assert cache.hits == 1
    assert cache.misses == 1
    assert first.value == second.value
    assert (first.field.values == second.field.values).all()


def test_sandwich_on_a_small_cube(small_ctx):
    report = check_lem1(0.5, 4.0, ctx=small_ctx)
    assert report.holds
    assert set(report.fitted_constants) >= {"C", "C_over_R2", "m0", "M0"}


def test_quotient_identity_on_a_small_cube(quick_cfg):
    ctx = SolveContext(quick_cfg.with_updates(restarts=2), counts_3d=lambda R: 7)
    report = check_quotient_identity(0.2, 4.0, ctx=ctx)
    assert report.holds
    assert report.fitted_constants["quotient"] < 0.0


def test_g_bounds_at_the_ends_of_the_range(quick_cfg):
    ctx = SolveContext(quick_cfg, g_radii=(3.0, 4.0, 5.0))
    report = check_g_bounds([0.0, 1.1], ctx=ctx)
    assert report.holds
    assert report.fitted_constants["g_hat@b=0"] == pytest.approx(-0.5, abs=0.02)
    assert report.fitted_constants["g_hat@b=1.1"] >= -1e-9


@pytest.mark.parametrize("check", [check_gauge_invariance, check_gradient_fd])
def test_infrastructure_checks_hold(check):
    assert check().holds


def test_spectrum3d_exactness_check():
    assert check_spectrum3d_exact(counts=16).holds


def test_registry_suites(small_ctx):
    registry = CheckRegistry(small_ctx)
    assert registry.names == SUITE_NAMES
    assert set(registry.suites) | {"all"} == set(SUITE_NAMES)
    with pytest.raises(KeyError):
        registry.run("nonexistent")


def test_registry_runs_infrastructure(small_ctx):
    report = CheckRegistry(small_ctx).run("infrastructure")
    assert report.passed
    assert [s["check"] for s in report.summaries] == ["gauge_invariance", "gradient_fd", "spectrum3d_direct_sum"]


def test_cube_density_constant(small_ctx):
    report = check_lem2(0.2, 4.0, ctx=small_ctx)
    c = report.fitted_constants
    assert report.name == "lemma_cube_density"
    assert c["M0_over_R3"] == pytest.approx(small_ctx.M0(0.2, 4.0).value / 64.0)
    assert c["C"] == pytest.approx(4.0 * (c["M0_over_R3"] - 0.5 * c["g_hat"]))
    assert c["g_hat"] == pytest.approx(small_ctx.g_hat(0.2, same_grid=True).extrapolated_g)


def test_l4_integral_follows_the_virial_identity(small_ctx):
    report = check_L4_bounds(0.2, 4.0, ctx=small_ctx)
    M0 = small_ctx.M0(0.2, 4.0)
    assert M0.value < 0.0
    assert report.fitted_constants["l4_integral"] == pytest.approx(-2.0 * M0.value, rel=1e-4)


def test_fit_nf_constant():
    two_g = 0.2
    assert fit_nf_constant(-0.5 * 8.0**1.5, 8.0, two_g) == 0.0
    value = -0.3 * 8.0**1.5
    C = fit_nf_constant(value, 8.0, two_g)
    assert 0.0 < C <= 8.0
    upper = -math.sqrt((1.0 - C / 8.0) * two_g) + (C / 8.0) / math.sqrt(two_g)
    assert upper == pytest.approx(value / 8.0**1.5, abs=1e-12)


def test_nf_reports_every_radius(small_ctx):
    report = check_nf(0.2, [5.0, 3.0, 4.0], ctx=small_ctx)
    for R in (3, 4, 5):
        assert report.fitted_constants[f"C_upper@R={R}"] >= 0.0
        assert f"F_lin_wstar@R={R}" in report.fitted_constants
    implied = -0.5 * (small_ctx.quotient(0.2, 5.0).value / 5.0**1.5) ** 2
    assert report.fitted_constants["implied_g"] == pytest.approx(implied)
    assert [p.x for p in report.points[:3]] == [3.0, 4.0, 5.0]


@pytest.mark.parametrize("b, radii", [(1.0, [3.0, 4.0, 5.0]), (0.5, [3.0, 4.0])])
def test_nf_rejects_bad_arguments(small_ctx, b, radii):
    with pytest.raises(ValueError):
        check_nf(b, radii, ctx=small_ctx)


def test_ka_fits_its_constant(small_ctx):
    b = 0.9
    report = check_ka(b, 1, ctx=small_ctx)
    c = report.fitted_constants
    R = math.sqrt(2.0 * math.pi)
    assert c["C"] == pytest.approx((c["m0"] - (1.0 - b) ** 2 * c["cR"]) / ((1.0 - b) * R))
    assert c["cR"] < 0.0
    assert report.holds
    assert KA_FIT_NOTE in report.notes
    with pytest.raises(ValueError):
        check_ka(0.0, 1, ctx=small_ctx)


def test_verify_options_cover_both_sandwich_fields():
    assert VerifyOptions().b_values == [0.85, 0.9]


def test_ka_and_l4_sweeps_assert_constant_growth(monkeypatch):
    import glreduced.checks.registry as registry_module

    constants = iter([1.0, 1.2, 1.1, 10.0])
    monkeypatch.setattr(registry_module, "check_ka", lambda b, n, ctx: report_with_constant(next(constants)))
    monkeypatch.setattr(registry_module, "check_abrikosov", lambda n_list, ctx: report_with_constant(0.0))
    monkeypatch.setattr(registry_module, "check_eab_consistency", lambda ctx: report_with_constant(0.0))
    registry = CheckRegistry(SimpleNamespace(cfg=SolverConfig()))
    ka = registry.run("abrikosov").reports[-1]
    assert ka.name == "ka_sweep"
    assert ka.asserted
    assert not ka.holds

    l4 = iter([1.0, 5.0, 1.0, 1.0])
    monkeypatch.setattr(registry_module, "check_L4_bounds", lambda b, R, ctx: report_with_constant(next(l4)))
    for name in ("check_lem1", "check_lem2", "check_quotient_identity"):
        monkeypatch.setattr(registry_module, name, lambda b, R, ctx: report_with_constant(1.0))
    monkeypatch.setattr(registry_module, "check_virial", lambda result: report_with_constant(1.0))
    monkeypatch.setattr(registry_module, "check_nf", lambda b, R_list, ctx: report_with_constant(1.0))
    options = VerifyOptions(b_values=[0.9, 0.95], R_list=[4.0, 5.0])
    registry = CheckRegistry(SimpleNamespace(cfg=SolverConfig(), M0=lambda b, R: None), options)
    sweeps = [item for item in registry.run("lemmas").reports if item.name == "l4_bounds_sweep"]
    assert [sweep.holds for sweep in sweeps] == [False, True]


def _g_stub(estimate):
    return SimpleNamespace(cfg=SolverConfig(), g_hat=lambda b: estimate, g_radii=[R for R, _ in estimate.values])


def test_g_bounds_assert_the_radius_sequence():
    clean = fit_g_estimate(0.5, [(R, -0.1 + 0.2 / R) for R in (4.0, 6.0, 8.0)])
    assert check_g_bounds([0.5], ctx=_g_stub(clean)).holds

    jagged = fit_g_estimate(0.5, [(4.0, -0.10), (6.0, -0.05), (8.0, -0.12)])
    report = check_g_bounds([0.5], ctx=_g_stub(jagged))
    failing = [p.label for p in report.points if not p.holds]
    assert not report.holds
    assert "m0/R^2 non-increasing 4 -> 6 at b=0.5" in failing
    assert "fit residual <= 0.1 |C|/R at b=0.5" in failing
