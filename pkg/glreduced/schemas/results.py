"""
Result schemas for minimizers, spectra, Abrikosov runs and cell statistics
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import NotConverged
from .field import ComplexField
from .grid import Box, Grid


class EnergyBreakdown(BaseModel):
    """b * kinetic_raw + mass + quartic = total.

    kinetic_raw is the unscaled quadratic form int |(grad - iA)u|^2, so one
    evaluation serves G_b, F_b and F^lin alike.
    """

    model_config = ConfigDict(frozen=True)

    kinetic: float
    kinetic_raw: float
    mass: float
    quartic: float
    total: float
    b: float

    @property
    def linear(self) -> float:
        """F^lin = b * kinetic_raw + mass"""
        return self.kinetic + self.mass

    @property
    def l4_integral(self) -> float:
        return 2.0 * self.quartic

    @property
    def l2_integral(self) -> float:
        return -self.mass


class Provenance(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: str
    b: float
    R: float
    L: Optional[float] = None
    counts: Tuple[int, ...]
    seed: int
    bc: str
    grad_tolerance: float
    max_iterations: int


class MinResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    value: float
    field: ComplexField = Field(exclude=True)
    breakdown: EnergyBreakdown
    residual: float
    iterations: int
    converged: bool
    provenance: Provenance
    # per-restart values, in seed order
    restart_values: List[float] = []
    diagnostics: Dict[str, float] = {}

    def require_converged(self) -> "MinResult":
        if not self.converged:
            raise NotConverged(
                f"{self.provenance.problem} at b={self.provenance.b}, R={self.provenance.R} "
                f"stopped after {self.iterations} iterations with residual {self.residual:.3e}"
            )
        return self


class GEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    b: float
    # (R, m0(b, R) / R^2), sorted by R
    values: List[Tuple[float, float]]
    extrapolated_g: float
    raw_fit_g: float
    fitted_C: float
    fit_residual: float
    error_bar: float
    monotone: bool
    converged: bool = True


class Spectrum(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    eigenvalues: List[float]
    clusters: List[List[int]]
    gap_threshold: float
    provenance: Dict[str, float] = {}
    # (2D eigenvalue index, longitudinal mode) per entry; 3D spectra only
    components: List[Tuple[int, int]] = []
    # columns are Euclidean-orthonormal eigenvectors on the flattened grid
    vectors: Optional[np.ndarray] = Field(default=None, exclude=True)

    @property
    def lowest_cluster(self) -> List[int]:
        return self.clusters[0] if self.clusters else []

    def distinct_values(self, tol: float = 1e-6) -> List[float]:
        """Cluster representatives (smallest member of each run closer than tol)"""
        distinct: List[float] = []
        for value in self.eigenvalues:
            if not distinct or value - distinct[-1] > tol:
                distinct.append(value)
        return distinct


class AbrikosovResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    coefficients: np.ndarray = Field(exclude=True)
    value: float
    value_over_area: float
    stationarity_defect: float
    pairing_defect: float
    l4_integral: float
    l2_integral: float
    n: int
    R: float
    restarts: int
    value_spread: float
    converged: bool
    # continuum min of F_R / R^2 over vortex-lattice states
    lattice_value: Optional[float] = None


class AbrikosovEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    # (n, R, c(R) / R^2)
    sequence: List[Tuple[int, float, float]]
    extrapolated_EAb: float
    successive_differences: List[float]
    cross_check_EAb: Optional[float] = None
    # against the discrete distance 1 - b mu_1
    cross_check_EAb_mu1: Optional[float] = None
    cross_check_points: List[Tuple[float, float]] = []


class CellRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    box: Box
    sites: int
    volume: float
    mean_density: float
    mean_quartic: float
    energy: EnergyBreakdown

    @property
    def energy_density(self) -> float:
        return self.energy.total / self.volume


class CellStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: List[CellRecord]
    global_mean_density: float
    global_mean_quartic: float
    quartic_spread: float
    kinetic_correction: float


class LLLBasis(BaseModel):
    """L2-orthonormal basis of the lowest Landau level on a magnetic-periodic square.

    vectors[m] is the m-th basis field on grid (int |f_m|^2 = 1 with the grid's dV).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: Grid
    vectors: np.ndarray = Field(exclude=True)
    eigenvalues: List[float]
    dimension: int
    max_eigenvalue_deviation: float
    cluster_tol: float
    next_eigenvalue: float

    @property
    def members(self) -> List[ComplexField]:
        return [ComplexField(grid=self.grid, values=v) for v in self.vectors]

    def gram(self) -> np.ndarray:
        flat = self.vectors.reshape(self.dimension, -1)
        return self.grid.volume_element * np.conj(flat) @ flat.T
