"""
Bulk density ratios against the Abrikosov constant near the upper critical field.

rho_4(b) = mean |u_b|^4 / (-2 E_Ab (1 - b)^2) and
rho_2(b) = mean |u_b|^2 / (-2 E_Ab (1 - b)), with E_Ab the tail of the
computed c(R)/R^2 sequence. The ratios against the discrete distance
1 - b mu_1, mu_1 the lowest Landau eigenvalue of the sample's own
cross-section, are reported alongside.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..checks.context import SolveContext
from ..checks.lemmas import STABILITY_FACTOR, constant_growth, make_point
from ..schemas import CheckPoint, InequalityReport, MinResult, ReducedParams, SolverConfig
from ..spectral import gap_defect, lll_basis, project_lll
from .cells import PartitionSpec, cell_statistics
from .solver import bulk_counts, default_params, solve_periodic_gl

logger = logging.getLogger(__name__)

RATIO_WINDOW = (0.8, 1.2)
GAP_EXPONENTS = (2, 4, 6)
ParamsRule = Callable[[float], ReducedParams]


class BulkSweep:
    """Periodic minimizers and their cross-section basis for a list of b, computed once"""

    def __init__(self, b_list: Sequence[float], params_rule: Optional[ParamsRule], ctx: SolveContext):
        b_list = [float(b) for b in b_list]
        if any(b2 <= b1 for b1, b2 in zip(b_list, b_list[1:])):
            raise ValueError(f"b_list must be strictly increasing, got {b_list}")
        self.b_list = b_list
        self.params_rule = params_rule or default_params
        self.ctx = ctx
        self.results: Dict[float, MinResult] = {}
        self.params: Dict[float, ReducedParams] = {}
        for b in b_list:
            params = self.params_rule(b)
            self.params[b] = params
            self.results[b] = ctx.memoize(("gl3d", params), lambda: solve_periodic_gl(params, cfg=ctx.cfg))

    def basis(self, b: float):
        params = self.params[b]
        counts = bulk_counts(params)[0]
        return self.ctx.memoize(("bulk_lll", params.R, counts), lambda: lll_basis(params.R, counts, seed=self.ctx.cfg.seed))

    def mu1(self, b: float) -> float:
        return min(self.basis(b).eigenvalues)


def _means(result: MinResult):
    density = np.abs(result.field.values) ** 2
    return float(np.mean(density)), float(np.mean(density**2))


def _ratio_points(name: str, ratios: Dict[float, float]) -> List[CheckPoint]:
    lo, hi = RATIO_WINDOW
    points = []
    for b, rho in ratios.items():
        points.append(make_point(f"{name}({b:g}) >= {lo}", lo, rho, x=b))
        points.append(make_point(f"{name}({b:g}) <= {hi}", rho, hi, x=b))
    items = list(ratios.items())
    for (b_a, r_a), (b_b, r_b) in zip(items, items[1:]):
        points.append(make_point(f"|{name} - 1| non-increasing {b_a:g} -> {b_b:g}", abs(r_b - 1.0), abs(r_a - 1.0), x=b_b))
    return points


def check_thm_l4(
    b_list: Sequence[float],
    params_rule: Optional[ParamsRule] = None,
    cfg: Optional[SolverConfig] = None,
    ctx: Optional[SolveContext] = None,
) -> InequalityReport:
    """rho_4(b) in [0.8, 1.2] for every b < 1 and |rho_4 - 1| non-increasing along b_list"""
    ctx = ctx or SolveContext(cfg)
    sweep = BulkSweep(b_list, params_rule, ctx)
    eab = ctx.eab().extrapolated_EAb

    ratios: Dict[float, float] = {}
    constants: Dict[str, float] = {"E_Ab": eab}
    notes: List[str] = []
    for b in sweep.b_list:
        result = sweep.results[b]
        mean2, mean4 = _means(result)
        if b >= 1.0:
            notes.append(f"b={b:g} is at or above the critical field: mean |u|^4 = {mean4:.3e} (excluded)")
            continue
        mu1 = sweep.mu1(b)
        rho = mean4 / (-2.0 * eab * (1.0 - b) ** 2)
        ratios[b] = rho
        constants[f"rho4@b={b:g}"] = rho
        constants[f"rho4_mu1@b={b:g}"] = mean4 / (-2.0 * eab * (1.0 - b * mu1) ** 2)
        constants[f"mu1@b={b:g}"] = mu1
        if mean4 < mean2**2 * (1.0 - 1e-12):
            notes.append(f"power-mean inequality fails at b={b:g}")
        if not result.converged:
            notes.append(f"gl3d b={b:g} did not converge (residual {result.residual:.3e})")

    return InequalityReport.from_points(
        "bulk_l4_density",
        _ratio_points("rho4", ratios),
        provenance={"b_list": sweep.b_list, "params": [sweep.params[b].model_dump() for b in sweep.b_list], "seed": ctx.cfg.seed},
        fitted_constants=constants,
        notes=notes,
    )


def check_thm_l2(
    b_list: Sequence[float],
    params_rule: Optional[ParamsRule] = None,
    cfg: Optional[SolverConfig] = None,
    ctx: Optional[SolveContext] = None,
) -> InequalityReport:
    """rho_2(b) in [0.8, 1.2], |rho_2 - 1| non-increasing, and the LLL proximity
    ||u - Pi_1 u||_2 <= C sqrt(1 - b) ||u||_2 with C fitted and its growth bounded by 2"""
    ctx = ctx or SolveContext(cfg)
    sweep = BulkSweep(b_list, params_rule, ctx)
    eab = ctx.eab().extrapolated_EAb

    ratios: Dict[float, float] = {}
    proximity: List[float] = []
    constants: Dict[str, float] = {"E_Ab": eab}
    notes: List[str] = []
    for b in sweep.b_list:
        result = sweep.results[b]
        mean2, _ = _means(result)
        if b >= 1.0:
            notes.append(f"b={b:g} is at or above the critical field: mean |u|^2 = {mean2:.3e} (excluded)")
            continue
        mu1 = sweep.mu1(b)
        rho = mean2 / (-2.0 * eab * (1.0 - b))
        ratios[b] = rho
        constants[f"rho2@b={b:g}"] = rho
        constants[f"rho2_mu1@b={b:g}"] = mean2 / (-2.0 * eab * (1.0 - b * mu1))

        field = result.field
        norm = field.l2_norm()
        if norm > 0.0:
            remainder = field.with_values(field.values - project_lll(field, sweep.basis(b)).values)
            C = remainder.l2_norm() / (norm * math.sqrt(1.0 - b))
            proximity.append(C)
            constants[f"lll_proximity_C@b={b:g}"] = C

    points = _ratio_points("rho2", ratios)
    if proximity:
        growth = constant_growth(proximity)
        constants["lll_proximity_C"] = max(proximity)
        constants["lll_proximity_growth"] = growth
        points.append(make_point("LLL proximity C growth", growth, STABILITY_FACTOR))
    return InequalityReport.from_points(
        "bulk_l2_density",
        points,
        provenance={"b_list": sweep.b_list, "params": [sweep.params[b].model_dump() for b in sweep.b_list], "seed": ctx.cfg.seed},
        fitted_constants=constants,
        notes=notes,
    )


def check_gap_defect(
    b_list: Sequence[float],
    params_rule: Optional[ParamsRule] = None,
    cfg: Optional[SolverConfig] = None,
    ctx: Optional[SolveContext] = None,
) -> InequalityReport:
    """||u - Pi_1 u||_p <= C_p sqrt(gamma) ||u||_2 for the periodic minimizers, p in {2, 4, 6}.

    gamma = (1 - b) / b: the pairing b Q(u) = ||u||^2 - ||u||_4^4 of a
    minimizer gives Q(u) <= (1 + gamma) ||u||^2. C_p is fitted per b and its
    growth along b_list is bounded by 2.
    """
    ctx = ctx or SolveContext(cfg)
    sweep = BulkSweep(b_list, params_rule, ctx)
    fitted: Dict[int, List[float]] = {p: [] for p in GAP_EXPONENTS}
    constants: Dict[str, float] = {}
    notes: List[str] = []
    for b in sweep.b_list:
        field = sweep.results[b].field
        if b >= 1.0 or field.l2_norm() == 0.0:
            notes.append(f"b={b:g} has the normal state as minimizer (excluded)")
            continue
        gamma = (1.0 - b) / b
        constants[f"gamma@b={b:g}"] = gamma
        for p in GAP_EXPONENTS:
            C = gap_defect(field, sweep.basis(b), gamma, p)
            fitted[p].append(C)
            constants[f"C{p}@b={b:g}"] = C

    points: List[CheckPoint] = []
    for p, values in fitted.items():
        if values:
            growth = constant_growth(values)
            constants[f"C{p}_growth"] = growth
            points.append(make_point(f"C{p} growth", growth, STABILITY_FACTOR))
    return InequalityReport.from_points(
        "bulk_gap_defect",
        points,
        provenance={"b_list": sweep.b_list, "params": [sweep.params[b].model_dump() for b in sweep.b_list], "seed": ctx.cfg.seed},
        fitted_constants=constants,
        notes=notes,
    )


def check_cell_homogeneity(
    b: float,
    divisions: Sequence[int] = (2, 2, 2),
    offsets: Sequence[Sequence[float]] = ((0.0, 0.0, 0.0), (0.5, 0.5, 0.0)),
    params_rule: Optional[ParamsRule] = None,
    cfg: Optional[SolverConfig] = None,
    ctx: Optional[SolveContext] = None,
    max_spread: float = 0.25,
) -> InequalityReport:
    """Per-tile mean |u|^4 within max_spread of the global mean on shifted tilings,
    and the periodic stationarity pairing b Q(u) - ||u||^2 + ||u||_4^4 = 0"""
    ctx = ctx or SolveContext(cfg)
    sweep = BulkSweep([b], params_rule, ctx)
    result = sweep.results[b]
    points: List[CheckPoint] = []
    constants: Dict[str, float] = {}
    for offset in offsets:
        stats = cell_statistics(result, PartitionSpec(divisions=tuple(divisions), offset=tuple(offset)))
        label = ",".join(f"{o:g}" for o in offset)
        constants[f"quartic_spread@offset={label}"] = stats.quartic_spread
        constants[f"partition_energy_defect@offset={label}"] = stats.kinetic_correction
        points.append(make_point(f"quartic spread offset=({label})", stats.quartic_spread, max_spread, x=b))
    pairing = result.diagnostics.get("pairing_defect", 0.0)
    points.append(make_point("periodic stationarity pairing", pairing, 1e-6, x=b))
    return InequalityReport.from_points(
        "cell_homogeneity",
        points,
        provenance={"b": b, "divisions": list(divisions), "params": sweep.params[b].model_dump(), "seed": ctx.cfg.seed},
        fitted_constants=constants,
    )
