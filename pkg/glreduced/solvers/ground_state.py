"""
Dirichlet ground states m0(b, R) on K_R and M0(b, R) on Q_R
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from ..field.energy import energy_of, gradient_of, gl_residual
from ..field.grid import build_grid
from ..field.links import link_phases
from ..schemas import BoundaryCondition, ComplexField, GaugeLinks, MinResult, Provenance, SolverConfig
from .descent import GradientDescent

logger = logging.getLogger(__name__)

Counts = Union[int, Sequence[int]]


def initial_field(links: GaugeLinks, b: float, seed: int, restart: int) -> np.ndarray:
    """Complex Gaussian start scaled so that int |u|^2 = (1 - b) * volume"""
    grid = links.grid
    rng = np.random.default_rng([seed, restart])
    z = (rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)) / np.sqrt(2.0)
    target = max(1.0 - b, 0.0) * grid.volume
    norm_sq = grid.volume_element * float(np.sum(np.abs(z) ** 2))
    return z * np.sqrt(target / norm_sq)


def initial_step(links: GaugeLinks, b: float) -> float:
    """Inverse of a bound on the gradient's Lipschitz constant"""
    grid = links.grid
    stiffness = b * sum(4.0 / h**2 for h in grid.spacing) + 2.0
    return 1.0 / (grid.volume_element * stiffness)


def energy_residual(links: GaugeLinks):
    dV = links.grid.volume_element

    def residual(x: np.ndarray, grad: np.ndarray) -> float:
        scale = max(1.0, float(np.max(np.abs(x), initial=0.0)))
        return float(np.max(np.abs(grad), initial=0.0)) / (dV * scale)

    return residual


def minimize_energy(
    links: GaugeLinks,
    b: float,
    cfg: SolverConfig,
    problem: str,
    R: float,
    L: Optional[float] = None,
    x0: Optional[np.ndarray] = None,
) -> MinResult:
    """Best-of-restarts minimization of the discrete E_b on the links' grid.

    For b >= 1 the start amplitude (1 - b) vanishes and the normal state u = 0
    is returned: the magnetic quadratic form dominates the mass term there.
    """
    grid = links.grid

    def objective(x: np.ndarray):
        return energy_of(x, links, b).total, gradient_of(x, links, b)

    best = None
    restart_values = []
    restarts = 1 if (b >= 1.0 or x0 is not None) else cfg.restarts
    for restart in range(restarts):
        if x0 is not None:
            start = x0
        elif b >= 1.0:
            start = np.zeros(grid.shape, dtype=complex)
        else:
            start = initial_field(links, b, cfg.seed, restart)
        alg = GradientDescent(
            objective, start, cfg, initial_step=initial_step(links, b), residual=energy_residual(links)
        )
        outcome = alg.run()
        restart_values.append(outcome.value)
        logger.debug(
            "%s b=%g R=%g restart %d: value=%.12g residual=%.3e iterations=%d",
            problem, b, R, restart, outcome.value, outcome.residual, outcome.iterations,
        )
        if best is None or outcome.value < best.value:
            best = outcome

    return _to_result(best.x, links, b, cfg, problem, R, L, best.residual, best.iterations, best.converged, restart_values)


def _to_result(x, links, b, cfg, problem, R, L, residual, iterations, converged, restart_values) -> MinResult:
    grid = links.grid
    breakdown = energy_of(x, links, b)
    result = MinResult(
        value=breakdown.total,
        field=ComplexField(grid=grid, values=x),
        breakdown=breakdown,
        residual=residual,
        iterations=iterations,
        converged=converged,
        provenance=Provenance(
            problem=problem,
            b=b,
            R=R,
            L=L,
            counts=grid.counts,
            seed=cfg.seed,
            bc=grid.bc.value,
            grad_tolerance=cfg.grad_tolerance,
            max_iterations=cfg.max_iterations,
        ),
        restart_values=restart_values,
    )
    if converged:
        logger.info("%s b=%g R=%g value=%.10g (%d iterations)", problem, b, R, result.value, iterations)
    else:
        logger.warning(
            "%s b=%g R=%g not converged: residual %.3e after %d iterations", problem, b, R, residual, iterations
        )
    if cfg.strict:
        result.require_converged()
    return result


def _unit_modulus_shortcut(links: GaugeLinks, cfg: SolverConfig, problem: str, R: float, L: Optional[float]) -> MinResult:
    """b = 0: the kinetic term drops and |u| = 1 on every interior site is optimal"""
    x = np.ones(links.grid.shape, dtype=complex)
    residual = gl_residual(x, links, 0.0)
    return _to_result(x, links, 0.0, cfg, problem, R, L, residual, 0, True, [])


def _check_inputs(b: float, R: float) -> None:
    if not b >= 0.0:
        raise ValueError(f"b must be non-negative, got {b}")
    if not R > 0.0:
        raise ValueError(f"R must be positive, got {R}")


def minimize_m0(b: float, R: float, counts: Counts, cfg: Optional[SolverConfig] = None) -> MinResult:
    """m0(b, R): minimum of the discrete G_{b,K_R} over fields vanishing on the boundary"""
    cfg = cfg or SolverConfig()
    _check_inputs(b, R)
    grid = build_grid((R, R), counts, BoundaryCondition.DIRICHLET)
    links = link_phases(grid, "A0")
    if b == 0.0:
        return _unit_modulus_shortcut(links, cfg, "m0", R, None)
    return minimize_energy(links, b, cfg, "m0", R)


def minimize_M0(b: float, R: float, counts: Counts, cfg: Optional[SolverConfig] = None) -> MinResult:
    """M0(b, R): minimum of the discrete F_{b,Q_R} on the Dirichlet cube"""
    cfg = cfg or SolverConfig()
    _check_inputs(b, R)
    grid = build_grid((R, R, R), counts, BoundaryCondition.DIRICHLET)
    links = link_phases(grid, "F")
    if b == 0.0:
        return _unit_modulus_shortcut(links, cfg, "M0", R, R)
    return minimize_energy(links, b, cfg, "M0", R, R)
