"""
The L4-normalized quotient

    Q(u) = F^lin_{b,Q_R}(u) / (int |u|^4)^(1/2),   F^lin = b * int |(grad - iF)u|^2 - int |u|^2

minimized by gradient flow with renormalization to int |u|^4 = 1 after every step.
Q is 0-homogeneous, so its gradient is tangent to the scaling orbit and the
renormalization leaves the value unchanged.
"""

import logging
from typing import Optional

import numpy as np

from ..field.energy import apply_operator, energy_of, quadratic_form
from ..field.grid import build_grid
from ..field.links import link_phases
from ..schemas import BoundaryCondition, ComplexField, GaugeLinks, MinResult, Provenance, SolverConfig
from .descent import GradientDescent
from .ground_state import Counts, energy_residual, initial_field, initial_step

logger = logging.getLogger(__name__)


def l4_norm_sq(values: np.ndarray, dV: float) -> float:
    """(int |u|^4)^(1/2)"""
    return float(np.sqrt(dV * np.sum(np.abs(values) ** 4)))


def normalize_l4(values: np.ndarray, dV: float) -> np.ndarray:
    return values / np.sqrt(l4_norm_sq(values, dV))


def quotient_value(values: np.ndarray, links: GaugeLinks, b: float) -> float:
    """Q(u); raises ValueError for u = 0"""
    dV = links.grid.volume_element
    denom = l4_norm_sq(values, dV)
    if denom == 0.0:
        raise ValueError("the quotient is undefined at u = 0")
    linear = b * quadratic_form(values, links) - dV * float(np.sum(np.abs(values) ** 2))
    return linear / denom


def quotient_gradient(values: np.ndarray, links: GaugeLinks, b: float) -> np.ndarray:
    """dQ/d(conj u) = g_lin / N - F^lin * dV |u|^2 u / N^3 with N = (int |u|^4)^(1/2)"""
    dV = links.grid.volume_element
    denom = l4_norm_sq(values, dV)
    linear = b * quadratic_form(values, links) - dV * float(np.sum(np.abs(values) ** 2))
    g_lin = dV * (b * apply_operator(values, links) - values)
    return g_lin / denom - linear * dV * np.abs(values) ** 2 * values / denom**3


def minimize_quotient(b: float, R: float, counts: Counts, cfg: Optional[SolverConfig] = None) -> MinResult:
    """M0-quotient on the Dirichlet cube Q_R; the returned field has int |u|^4 = 1"""
    cfg = cfg or SolverConfig()
    if not 0.0 < b < 1.0:
        raise ValueError(f"the quotient problem needs b in (0, 1), got {b}")
    if not R > 0.0:
        raise ValueError(f"R must be positive, got {R}")

    grid = build_grid((R, R, R), counts, BoundaryCondition.DIRICHLET)
    links = link_phases(grid, "F")
    dV = grid.volume_element

    def objective(x: np.ndarray):
        return quotient_value(x, links, b), quotient_gradient(x, links, b)

    def retract(x: np.ndarray) -> np.ndarray:
        return normalize_l4(x, dV)

    best = None
    restart_values = []
    for restart in range(cfg.restarts):
        start = initial_field(links, b, cfg.seed, restart)
        alg = GradientDescent(
            objective,
            start,
            cfg,
            initial_step=initial_step(links, b),
            residual=energy_residual(links),
            retract=retract,
        )
        outcome = alg.run()
        restart_values.append(outcome.value)
        logger.debug(
            "quotient b=%g R=%g restart %d: value=%.12g residual=%.3e",
            b, R, restart, outcome.value, outcome.residual,
        )
        if best is None or outcome.value < best.value:
            best = outcome

    result = MinResult(
        value=best.value,
        field=ComplexField(grid=grid, values=best.x),
        breakdown=energy_of(best.x, links, b),
        residual=best.residual,
        iterations=best.iterations,
        converged=best.converged,
        provenance=Provenance(
            problem="quotient",
            b=b,
            R=R,
            L=R,
            counts=grid.counts,
            seed=cfg.seed,
            bc=grid.bc.value,
            grad_tolerance=cfg.grad_tolerance,
            max_iterations=cfg.max_iterations,
        ),
        restart_values=restart_values,
    )
    if result.converged:
        logger.info("quotient b=%g R=%g value=%.10g", b, R, result.value)
    else:
        logger.warning("quotient b=%g R=%g not converged: residual %.3e", b, R, result.residual)
    if cfg.strict:
        result.require_converged()
    return result
