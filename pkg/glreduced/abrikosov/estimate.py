"""
E_Ab from the sequence c(R)/R^2, cross-checked against g(b) / (1 - b)^2 near b = 1
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from ..field.grid import periodic_counts
from ..schemas import AbrikosovEstimate, AbrikosovResult, GEstimate, SolverConfig
from ..solvers.thermodynamic import estimate_g
from .energy import minimize_cR

logger = logging.getLogger(__name__)

CROSS_CHECK_B = (0.85, 0.9, 0.95)


def fit_near_critical(estimates: Sequence[GEstimate], mu1: float = 1.0) -> float:
    """Least-squares E in g(b) ~ E (1 - b mu1)^2, mu1 the discrete lowest Landau eigenvalue"""
    x = np.array([(1.0 - e.b * mu1) ** 2 for e in estimates])
    y = np.array([e.extrapolated_g for e in estimates])
    return float(np.dot(x, y) / np.dot(x, x))


def estimate_EAb(
    n_list: Sequence[int],
    counts_rule: Optional[Callable[[int], int]] = None,
    cfg: Optional[SolverConfig] = None,
    g_estimates: Optional[Sequence[GEstimate]] = None,
    cross_check_R: Optional[Sequence[float]] = None,
    minimize: Optional[Callable[[int, int], AbrikosovResult]] = None,
    mu1: float = 1.0,
) -> AbrikosovEstimate:
    """Tail value of c(R)/R^2 over increasing flux quanta.

    The cross-check comes from g_estimates when given, otherwise from
    estimate_g at b in {0.85, 0.9, 0.95} over cross_check_R; with neither it
    is left empty. The cross-check uses the continuum distance 1 - b; the fit
    against 1 - b mu1, mu1 the discrete lowest Landau eigenvalue at the
    spacing of the g-hat grids, is reported as cross_check_EAb_mu1.
    `minimize` replaces minimize_cR (e.g. by a memoized variant).
    """
    cfg = cfg or SolverConfig()
    counts_rule = counts_rule or periodic_counts
    n_list = [int(n) for n in n_list]
    if not n_list or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be non-empty and strictly increasing, got {n_list}")

    sequence = []
    for n in n_list:
        result = minimize(n, counts_rule(n)) if minimize else minimize_cR(n, counts_rule(n), cfg)
        sequence.append((n, result.R, result.value_over_area))
    ratios = [s[2] for s in sequence]
    differences = [float(b - a) for a, b in zip(ratios, ratios[1:])]

    if g_estimates is None and cross_check_R is not None:
        g_estimates = [estimate_g(b, cross_check_R, cfg=cfg) for b in CROSS_CHECK_B]

    cross_check = cross_check_mu1 = None
    points = []
    if g_estimates:
        cross_check = fit_near_critical(g_estimates)
        cross_check_mu1 = fit_near_critical(g_estimates, mu1)
        points = [(e.b, e.extrapolated_g / (1.0 - e.b) ** 2) for e in g_estimates]

    estimate = AbrikosovEstimate(
        sequence=sequence,
        extrapolated_EAb=ratios[-1],
        successive_differences=differences,
        cross_check_EAb=cross_check,
        cross_check_EAb_mu1=cross_check_mu1,
        cross_check_points=points,
    )
    logger.info("E_Ab ~ %.6f (cross-check %s)", estimate.extrapolated_EAb, cross_check)
    return estimate
