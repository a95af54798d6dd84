"""
Magnetic-periodic bulk samples: frozen-field minimizers, cell statistics and density ratios
"""

from .cells import PartitionSpec, cell_statistics, tile_boxes
from .solver import bulk_counts, default_params, solve_periodic_gl
from .theorems import check_cell_homogeneity, check_gap_defect, check_thm_l2, check_thm_l4

__all__ = [
    "PartitionSpec",
    "bulk_counts",
    "cell_statistics",
    "check_cell_homogeneity",
    "check_gap_defect",
    "check_thm_l2",
    "check_thm_l4",
    "default_params",
    "solve_periodic_gl",
    "tile_boxes",
]
