"""
Inequality and identity checks among m0, M0, g, c(R) and the L4 quotient.

Every check returns an InequalityReport. Asserted relations use the uniform
slack 10 * (sum of constituent solver tolerances) * max(1, |scale|), plus the
g-hat error bar wherever g-hat enters. Wherever a relation carries an
unspecified universal constant C, the constant is fitted and reported; sweeps
assert only that it does not grow by more than a factor 2.
"""

import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from scipy.optimize import brentq

from ..errors import NotApplicable
from ..field.grid import side_for_quanta
from ..schemas import CheckPoint, GEstimate, InequalityReport, MinResult, SolverConfig
from .context import SolveContext

logger = logging.getLogger(__name__)

SLACK_FACTOR = 10.0
VIRIAL_TOLERANCE = 1e-6
STABILITY_FACTOR = 2.0
FIT_RESIDUAL_FRACTION = 0.1
KA_FIT_NOTE = "reported fit: the right-hand side uses the fitted C, so this point is not an independent bound"


def solver_slack(*results: MinResult, scale: float = 1.0, g_error: float = 0.0) -> float:
    tolerance = sum(r.provenance.grad_tolerance for r in results)
    return SLACK_FACTOR * tolerance * max(1.0, abs(scale)) + g_error


def make_point(label: str, lhs: float, rhs: float, slack: float = 0.0, x: Optional[float] = None) -> CheckPoint:
    return CheckPoint(label=label, lhs=lhs, rhs=rhs, slack=slack, holds=lhs <= rhs + slack, x=x)


def constant_growth(constants: Sequence[float], floor: float = 1e-9) -> float:
    """Ratio of the last fitted constant to the largest earlier one (positive parts)"""
    positive = [max(c, 0.0) for c in constants]
    if len(positive) < 2:
        return 1.0
    reference = max(max(positive[:-1]), floor)
    return max(positive[-1], floor) / reference


def _context(cfg: Optional[SolverConfig], ctx: Optional[SolveContext]) -> SolveContext:
    return ctx if ctx is not None else SolveContext(cfg)


def _provenance(ctx: SolveContext, **extra) -> Dict:
    return {
        **extra,
        "grad_tolerance": ctx.cfg.grad_tolerance,
        "max_iterations": ctx.cfg.max_iterations,
        "seed": ctx.cfg.seed,
        "restarts": ctx.cfg.restarts,
    }


def _convergence_notes(*results: MinResult) -> List[str]:
    return [
        f"{r.provenance.problem} b={r.provenance.b} R={r.provenance.R} did not converge (residual {r.residual:.3e})"
        for r in results
        if not r.converged
    ]


def _check_b_R(b: float, R: float, upper_b: float = 1.0) -> None:
    if not 0.0 < b <= upper_b:
        raise ValueError(f"b must lie in (0, {upper_b}], got {b}")
    if not R > 2.0:
        raise ValueError(f"R must exceed 2, got {R}")


def check_lem1(b: float, R: float, cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """R m0(b, R) <= M0(b, R) <= (R - 2) m0(b, R) + C.

    The left inequality is asserted; C = M0 - (R - 2) m0 is reported. m0 is
    computed with the cube's in-plane counts, so the discrete slicing argument
    holds on the same lattice.
    """
    _check_b_R(b, R)
    ctx = _context(cfg, ctx)
    counts = ctx.counts_3d(R)
    m0 = ctx.m0(b, R, counts)
    M0 = ctx.M0(b, R)

    slack = solver_slack(m0, M0, scale=abs(R * m0.value) + abs(M0.value))
    C = M0.value - (R - 2.0) * m0.value
    report = InequalityReport.from_points(
        "lemma_sandwich",
        [make_point(f"R*m0 <= M0 at R={R:g}", R * m0.value, M0.value, slack, x=R)],
        provenance=_provenance(ctx, b=b, R=R, counts=counts),
        fitted_constants={"C": C, "C_over_R2": C / R**2, "m0": m0.value, "M0": M0.value},
        notes=_convergence_notes(m0, M0),
    )
    logger.info("sandwich b=%g R=%g: %.6g <= %.6g (C=%.4g) %s", b, R, R * m0.value, M0.value, C, report.holds)
    return report


def check_lem2(b: float, R: float, cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """g(b) <= M0(b, R)/R^3 <= (R - 2)/R g(b) + C/R with the same-grid g-hat.

    The lower bound is asserted with the g-hat error bar in the slack;
    C = R (M0/R^3 - (R - 2)/R g-hat) is reported.
    """
    _check_b_R(b, R)
    ctx = _context(cfg, ctx)
    g = ctx.g_hat(b, same_grid=True)
    M0 = ctx.M0(b, R)

    density = M0.value / R**3
    slack = solver_slack(M0, scale=abs(M0.value)) / R**3 + g.error_bar
    C = R * (density - (R - 2.0) / R * g.extrapolated_g)
    report = InequalityReport.from_points(
        "lemma_cube_density",
        [make_point(f"g <= M0/R^3 at R={R:g}", g.extrapolated_g, density, slack, x=R)],
        provenance=_provenance(ctx, b=b, R=R, counts=ctx.counts_3d(R), g_radii=list(ctx.g_radii)),
        fitted_constants={"C": C, "g_hat": g.extrapolated_g, "g_error_bar": g.error_bar, "M0_over_R3": density},
        notes=_convergence_notes(M0) + ([] if g.converged else ["g-hat includes non-converged m0 values"]),
    )
    return report


def check_virial(min_result: MinResult, require_converged: bool = True) -> InequalityReport:
    """|E + 1/2 int |v|^4| / (1 + |E|) <= 1e-6 at a critical point.

    At any stationary point of E_b the pairing Re<v, dE> vanishes, and that
    pairing equals E + 1/2 int |v|^4.

    A non-converged result adds a failing convergence point unless
    require_converged is false.

    Raises:
        NotApplicable: quotient results
    """
    if min_result.provenance.problem == "quotient":
        raise NotApplicable("the virial identity applies to energy minimizers, not to the quotient")
    value = min_result.value
    defect = abs(value + 0.5 * min_result.breakdown.l4_integral) / (1.0 + abs(value))
    p = min_result.provenance
    points = [make_point(f"virial defect {p.problem} b={p.b:g} R={p.R:g}", defect, VIRIAL_TOLERANCE, x=p.R)]
    notes = []
    if require_converged and not min_result.converged:
        points.append(
            CheckPoint(
                label=f"{p.problem} converged b={p.b:g} R={p.R:g}",
                lhs=min_result.residual,
                rhs=p.grad_tolerance,
                holds=False,
                x=p.R,
            )
        )
        notes = _convergence_notes(min_result)
    return InequalityReport.from_points(
        "virial",
        points,
        provenance=p.model_dump(mode="json"),
        fitted_constants={"defect": defect, "value": value, "l4_integral": min_result.breakdown.l4_integral},
        notes=notes,
    )


def check_L4_bounds(b: float, R: float, cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """-2R^2(R - 2)g - C R^2 <= int |v|^4 <= -2R^3 g for the M0 minimizer v.

    The upper bound is asserted; C = (-2R^2(R - 2)g - int |v|^4) / R^2 is reported.
    """
    _check_b_R(b, R)
    ctx = _context(cfg, ctx)
    g = ctx.g_hat(b, same_grid=True)
    M0 = ctx.M0(b, R)

    l4 = M0.breakdown.l4_integral
    upper = -2.0 * R**3 * g.extrapolated_g
    slack = solver_slack(M0, scale=l4) + 2.0 * R**3 * g.error_bar
    C = (-2.0 * R**2 * (R - 2.0) * g.extrapolated_g - l4) / R**2
    return InequalityReport.from_points(
        "l4_bounds",
        [make_point(f"int|v|^4 <= -2R^3 g at R={R:g}", l4, upper, slack, x=R)],
        provenance=_provenance(ctx, b=b, R=R, counts=ctx.counts_3d(R)),
        fitted_constants={"C": C, "l4_integral": l4, "g_hat": g.extrapolated_g},
        notes=_convergence_notes(M0),
    )


def check_quotient_identity(b: float, R: float, cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """M0 = -1/2 Mq^2 on a common grid whenever the quotient minimum Mq is negative.

    Minimizing t -> t^2 F^lin(u) + 1/2 t^4 int |u|^4 over the scale t turns
    one problem into the other.
    """
    _check_b_R(b, R)
    if b >= 1.0:
        raise ValueError("the quotient problem needs b < 1")
    ctx = _context(cfg, ctx)
    M0 = ctx.M0(b, R)
    quotient = ctx.quotient(b, R)

    predicted = -0.5 * quotient.value**2 if quotient.value < 0.0 else 0.0
    defect = abs(M0.value - predicted)
    slack = solver_slack(M0, quotient, scale=M0.value)
    return InequalityReport.from_points(
        "quotient_identity",
        [make_point(f"|M0 + Mq^2/2| at R={R:g}", defect, 0.0, slack, x=R)],
        provenance=_provenance(ctx, b=b, R=R, counts=ctx.counts_3d(R)),
        fitted_constants={"M0": M0.value, "quotient": quotient.value, "predicted_M0": predicted},
        notes=_convergence_notes(M0, quotient),
    )


def _nf_upper(C: float, R: float, two_g: float) -> float:
    """-((1 - C/R)(-2g))^(1/2) + (C/R)(-2g)^(-1/2)"""
    return -math.sqrt(max(1.0 - C / R, 0.0) * two_g) + (C / R) / math.sqrt(two_g)


def fit_nf_constant(value: float, R: float, two_g: float) -> float:
    """Smallest C in [0, R] making the upper bound hold with equality (0 if it already holds)"""
    target = value / R**1.5
    if _nf_upper(0.0, R, two_g) >= target:
        return 0.0
    return float(brentq(lambda C: _nf_upper(C, R, two_g) - target, 0.0, R, xtol=1e-14))


def check_nf(b: float, R_list: Sequence[float], cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """Two-sided bound on Mq(b, R)/R^(3/2) in terms of (-2g)^(1/2).

    Asserted: the lower bound per R, a shrinking gap to the lower bound along
    R_list, and -1/2 (Mq/R^(3/2))^2 within 15% of g-hat at the largest R.
    Reported: the upper-bound constant C per R and, for the rescaled quotient
    minimizer w* = R^(3/4)(-2g)^(1/4) w, the pair F^lin(w*) and 2R^3 g.
    """
    if not 0.0 < b < 1.0:
        raise ValueError(f"b must lie in (0, 1), got {b}")
    R_list = sorted(float(R) for R in R_list)
    if len(R_list) < 3:
        raise ValueError("check_nf needs at least 3 radii")
    ctx = _context(cfg, ctx)
    g = ctx.g_hat(b, same_grid=True)
    two_g = -2.0 * g.extrapolated_g
    if two_g <= 0.0:
        raise NotApplicable(f"g-hat({b}) = {g.extrapolated_g} leaves no bound to check")
    root = math.sqrt(two_g)

    points: List[CheckPoint] = []
    constants: Dict[str, float] = {"g_hat": g.extrapolated_g}
    gaps: List[Tuple[float, float]] = []
    notes: List[str] = []
    for R in R_list:
        quotient = ctx.quotient(b, R)
        scaled = quotient.value / R**1.5
        slack = solver_slack(quotient, scale=scaled) + g.error_bar / root
        points.append(make_point(f"lower bound at R={R:g}", -root, scaled, slack, x=R))
        gaps.append((R, scaled + root))
        constants[f"C_upper@R={R:g}"] = fit_nf_constant(quotient.value, R, two_g)
        constants[f"F_lin_wstar@R={R:g}"] = R**1.5 * root * quotient.value
        constants[f"two_R3_g@R={R:g}"] = 2.0 * R**3 * g.extrapolated_g
        notes.extend(_convergence_notes(quotient))

    for (R_a, gap_a), (R_b, gap_b) in zip(gaps, gaps[1:]):
        points.append(make_point(f"gap shrinks {R_a:g} -> {R_b:g}", gap_b, gap_a, 0.0, x=R_b))

    R_last = R_list[-1]
    implied = -0.5 * (ctx.quotient(b, R_last).value / R_last**1.5) ** 2
    constants["implied_g"] = implied
    points.append(
        make_point(
            f"-(Mq/R^1.5)^2/2 vs g at R={R_last:g}",
            abs(implied - g.extrapolated_g),
            0.15 * abs(g.extrapolated_g),
            g.error_bar,
            x=R_last,
        )
    )
    return InequalityReport.from_points(
        "nonlinear_eigenvalue",
        points,
        provenance=_provenance(ctx, b=b, R_list=R_list, g_radii=list(ctx.g_radii)),
        fitted_constants=constants,
        notes=notes,
    )


def _sequence_points(est: GEstimate) -> List[CheckPoint]:
    """m0/R^2 non-increasing in R and the g + C/R fit residual against C/R"""
    points = []
    scale = max(1.0, max((abs(v) for _, v in est.values), default=0.0))
    for (R_a, v_a), (R_b, v_b) in zip(est.values, est.values[1:]):
        points.append(make_point(f"m0/R^2 non-increasing {R_a:g} -> {R_b:g} at b={est.b:g}", v_b, v_a, 1e-9 * scale, x=R_b))
    if est.values:
        R_max = est.values[-1][0]
        points.append(
            make_point(
                f"fit residual <= {FIT_RESIDUAL_FRACTION:g} |C|/R at b={est.b:g}",
                est.fit_residual,
                FIT_RESIDUAL_FRACTION * abs(est.fitted_C) / R_max,
                1e-9 * scale,
                x=est.b,
            )
        )
    return points


def check_g_bounds(b_list: Iterable[float], cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """-1/2 (1 - b)^2 <= g-hat(b) <= 0 and g-hat non-decreasing in b.

    b >= 1 requires g-hat >= -1e-9, b = 0 requires g-hat = -1/2 within 0.02.
    Per b, m0/R^2 must not increase with R and the RMS residual of the g + C/R
    fit must stay within FIT_RESIDUAL_FRACTION * |C| / R at the largest R.
    The implied alpha-hat = min |g-hat| / (1 - b)^2 over b < 1 is reported.
    """
    b_list = sorted(float(b) for b in b_list)
    if not b_list or b_list[0] < 0.0:
        raise ValueError(f"b_list must be non-empty and non-negative, got {b_list}")
    ctx = _context(cfg, ctx)
    estimates = [ctx.g_hat(b) for b in b_list]

    points: List[CheckPoint] = []
    constants: Dict[str, float] = {}
    for b, est in zip(b_list, estimates):
        g = est.extrapolated_g
        constants[f"g_hat@b={b:g}"] = g
        constants[f"C@b={b:g}"] = est.fitted_C
        lower = -0.5 * (1.0 - b) ** 2 if b < 1.0 else -1e-9
        points.append(make_point(f"g(b) >= -(1-b)^2/2 at b={b:g}", lower, g, est.error_bar, x=b))
        if b == 0.0:
            points.append(make_point("g(0) = -1/2", abs(g + 0.5), 0.02, 0.0, x=b))
        points.extend(_sequence_points(est))

    for (b_a, est_a), (b_b, est_b) in zip(zip(b_list, estimates), zip(b_list[1:], estimates[1:])):
        points.append(
            make_point(
                f"g non-decreasing {b_a:g} -> {b_b:g}",
                est_a.extrapolated_g,
                est_b.extrapolated_g,
                est_a.error_bar + est_b.error_bar,
                x=b_b,
            )
        )

    ratios = [abs(e.extrapolated_g) / (1.0 - b) ** 2 for b, e in zip(b_list, estimates) if b < 1.0]
    if ratios:
        constants["alpha_hat"] = min(ratios)
    return InequalityReport.from_points(
        "g_bounds",
        points,
        provenance=_provenance(ctx, b_list=b_list, g_radii=list(ctx.g_radii)),
        fitted_constants=constants,
        notes=[f"g-hat({e.b:g}) sequence is not monotone in R" for e in estimates if not e.monotone],
    )


def check_ka(b: float, n: int, cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """m0(b, R) <= (1 - b)^2 c(R) + C (1 - b) R at R = sqrt(2 pi n), with C fitted.

    The point holds by construction; the information is C, whose stability
    across a sweep is what sweep_report asserts.
    """
    if not 0.0 < b <= 1.0:
        raise ValueError(f"b must lie in (0, 1], got {b}")
    ctx = _context(cfg, ctx)
    R = side_for_quanta(n)
    m0 = ctx.m0(b, R)
    cR = ctx.cR(n)

    base = (1.0 - b) ** 2 * cR.value
    C = (m0.value - base) / ((1.0 - b) * R) if b < 1.0 else 0.0
    rhs = base + max(C, 0.0) * (1.0 - b) * R
    return InequalityReport.from_points(
        "ka_inequality",
        [make_point(f"m0 <= (1-b)^2 c(R) + C(1-b)R at b={b:g}, n={n}", m0.value, rhs, solver_slack(m0, scale=m0.value), x=R)],
        provenance=_provenance(ctx, b=b, n=n, R=R, counts=ctx.counts_2d(R)),
        fitted_constants={"C": C, "m0": m0.value, "cR": cR.value},
        notes=[KA_FIT_NOTE] + _convergence_notes(m0) + ([] if cR.converged else [f"c(R) for n={n} did not converge"]),
    )


def sweep_report(name: str, reports: Sequence[InequalityReport], constant: str = "C", asserted_growth: bool = True) -> InequalityReport:
    """Merge per-parameter reports and check that the fitted constant does not grow.

    The constants are taken in report order; the growth point compares the
    last one against the largest earlier one.
    """
    points: List[CheckPoint] = []
    constants: Dict[str, float] = {}
    notes: List[str] = []
    values = []
    for index, report in enumerate(reports):
        points.extend(report.points)
        notes.extend(report.notes)
        value = report.fitted_constants.get(constant)
        if value is not None:
            values.append(value)
            label = report.points[0].label if report.points else str(index)
            constants[f"{constant}[{label}]"] = value

    growth = constant_growth(values)
    constants[f"{constant}_growth"] = growth
    if asserted_growth:
        points.append(make_point(f"{constant} growth across the sweep", growth, STABILITY_FACTOR))
    elif growth > STABILITY_FACTOR:
        notes.append(f"{constant} grows by {growth:.3g} across the sweep (reported only)")
    return InequalityReport.from_points(
        name,
        points,
        provenance={"parts": [r.provenance for r in reports]},
        fitted_constants=constants,
        notes=notes,
    )
