"""
Schema definitions for the reduced Ginzburg-Landau toolkit
"""

from .field import ComplexField, GaugeLinks, link_shape
from .grid import BoundaryCondition, Box, Grid, ReducedParams
from .reports import CheckPoint, InequalityReport, RunManifest, SweepReport
from .results import (
    AbrikosovEstimate,
    AbrikosovResult,
    CellRecord,
    CellStats,
    EnergyBreakdown,
    GEstimate,
    LLLBasis,
    MinResult,
    Provenance,
    Spectrum,
)
from .solver import SolverConfig, StepRule

__all__ = [
    "AbrikosovEstimate",
    "AbrikosovResult",
    "BoundaryCondition",
    "Box",
    "CellRecord",
    "CellStats",
    "CheckPoint",
    "ComplexField",
    "EnergyBreakdown",
    "GEstimate",
    "GaugeLinks",
    "Grid",
    "InequalityReport",
    "LLLBasis",
    "MinResult",
    "Provenance",
    "ReducedParams",
    "RunManifest",
    "SolverConfig",
    "Spectrum",
    "StepRule",
    "SweepReport",
    "link_shape",
]
