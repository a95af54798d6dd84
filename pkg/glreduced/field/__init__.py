"""
Lattice geometry, Peierls links and gauge-covariant energies
"""

from .energy import (
    apply_operator,
    check_box,
    edge_differences,
    energy,
    energy_of,
    gl_residual,
    gradient,
    gradient_of,
    local_energy,
    quadratic_form,
)
from .grid import (
    axis_coordinates,
    build_grid,
    cross_section,
    dirichlet_counts,
    periodic_counts,
    quantized_flux,
    side_for_quanta,
    site_coordinates,
)
from .links import gauge_transform, link_phases, plaquette_angles, total_flux_phase, trivial_links

__all__ = [
    "apply_operator",
    "axis_coordinates",
    "build_grid",
    "check_box",
    "cross_section",
    "dirichlet_counts",
    "edge_differences",
    "energy",
    "energy_of",
    "gauge_transform",
    "gl_residual",
    "gradient",
    "gradient_of",
    "link_phases",
    "local_energy",
    "periodic_counts",
    "plaquette_angles",
    "quadratic_form",
    "quantized_flux",
    "side_for_quanta",
    "site_coordinates",
    "total_flux_phase",
    "trivial_links",
]
