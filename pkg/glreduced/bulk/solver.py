"""
Frozen-field GL minimization on magnetic-periodic boxes Q_{R,L}
"""

import logging
import math
from typing import Optional, Sequence, Union

import numpy as np

from ..field.energy import gl_residual, quadratic_form
from ..field.grid import build_grid, periodic_counts
from ..field.links import link_phases
from ..schemas import BoundaryCondition, MinResult, ReducedParams, SolverConfig
from ..solvers.ground_state import minimize_energy

logger = logging.getLogger(__name__)


def bulk_counts(params: ReducedParams) -> tuple:
    """Cross-section counts from the flux rule, x3 counts at the same spacing"""
    n = int(round(params.flux_quanta))
    planar = periodic_counts(n)
    spacing = params.R / planar
    return planar, planar, max(4, int(round(params.L / spacing)))


def periodic_diagnostics(result: MinResult, links, b: float) -> dict:
    """GL residual, max density, x3 variation of |u|^2 and the stationarity pairing"""
    values = result.field.values
    grid = result.field.grid
    density = np.abs(values) ** 2
    dV = grid.volume_element
    l2 = dV * float(np.sum(density))
    l4 = dV * float(np.sum(density**2))
    pairing = b * quadratic_form(values, links) - l2 + l4
    return {
        "gl_residual": gl_residual(values, links, b),
        "max_density": float(np.max(density, initial=0.0)),
        "x3_variation": float(np.max(np.ptp(density, axis=2), initial=0.0)),
        "pairing_defect": abs(pairing) / (1.0 + abs(result.value)),
        "energy_per_volume": result.value / grid.volume,
    }


def solve_periodic_gl(
    params: ReducedParams,
    counts: Optional[Union[int, Sequence[int]]] = None,
    cfg: Optional[SolverConfig] = None,
) -> MinResult:
    """Minimize F_{b,Q_{R,L}} with A = F on the magnetic-periodic box.

    For b >= 1 the normal state u = 0 is returned.

    Raises:
        NonQuantizedFlux: R^2 / 2pi is not an integer
    """
    cfg = cfg or SolverConfig()
    counts = counts if counts is not None else bulk_counts(params)
    grid = build_grid((params.R, params.R, params.L), counts, BoundaryCondition.MAGNETIC_PERIODIC)
    links = link_phases(grid, "F")
    result = minimize_energy(links, params.b, cfg, "gl3d", params.R, params.L)
    diagnostics = periodic_diagnostics(result, links, params.b)
    logger.info(
        "gl3d b=%g n=%d: E/|Q|=%.6g max|u|^2=%.4f x3-variation=%.2e",
        params.b,
        grid.flux_quanta,
        diagnostics["energy_per_volume"],
        diagnostics["max_density"],
        diagnostics["x3_variation"],
    )
    return result.model_copy(update={"diagnostics": diagnostics})


def default_params(b: float, n: int = 4) -> ReducedParams:
    """n flux quanta on a cubic box, L = R"""
    R = math.sqrt(2.0 * math.pi * n)
    return ReducedParams(b=b, R=R, L=R)
