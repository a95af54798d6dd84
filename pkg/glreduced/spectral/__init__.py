"""
Landau operators: spectra, the lowest-Landau-level basis and Pi_1
"""

from .lll import gap_defect, lll_basis, lll_coefficients, project_lll
from .operator import magnetic_operator, rayleigh_quotient
from .spectrum import (
    GAP_THRESHOLD,
    longitudinal_energy,
    lowest_landau_eigenvalue,
    partition_clusters,
    spectrum2d,
    spectrum3d,
)

__all__ = [
    "GAP_THRESHOLD",
    "gap_defect",
    "lll_basis",
    "lll_coefficients",
    "longitudinal_energy",
    "lowest_landau_eigenvalue",
    "magnetic_operator",
    "partition_clusters",
    "project_lll",
    "rayleigh_quotient",
    "spectrum2d",
    "spectrum3d",
]
