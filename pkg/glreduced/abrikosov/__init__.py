"""
Abrikosov energy over the lowest Landau level and the E_Ab estimate
"""

from .energy import (
    AbrikosovTensors,
    abrikosov_beta,
    abrikosov_energy,
    abrikosov_tensors,
    lattice_start,
    lattice_value,
    minimize_cR,
    polynomial_gradient,
    polynomial_value,
    vortex_lattices,
)
from .estimate import CROSS_CHECK_B, estimate_EAb, fit_near_critical

__all__ = [
    "AbrikosovTensors",
    "CROSS_CHECK_B",
    "abrikosov_beta",
    "abrikosov_energy",
    "abrikosov_tensors",
    "estimate_EAb",
    "fit_near_critical",
    "lattice_start",
    "lattice_value",
    "minimize_cR",
    "polynomial_gradient",
    "polynomial_value",
    "vortex_lattices",
]
