"""
Variational solvers: Dirichlet ground states, the L4 quotient and g(b)
"""

from .descent import DescentOutcome, GradientDescent
from .ground_state import minimize_energy, minimize_M0, minimize_m0
from .quotient import minimize_quotient, normalize_l4, quotient_gradient, quotient_value
from .thermodynamic import (
    SPACING_2D,
    SPACING_3D,
    counts_rule_2d,
    counts_rule_3d,
    estimate_g,
    fit_g_estimate,
)

__all__ = [
    "DescentOutcome",
    "GradientDescent",
    "SPACING_2D",
    "SPACING_3D",
    "counts_rule_2d",
    "counts_rule_3d",
    "estimate_g",
    "fit_g_estimate",
    "minimize_M0",
    "minimize_energy",
    "minimize_m0",
    "minimize_quotient",
    "normalize_l4",
    "quotient_gradient",
    "quotient_value",
]
