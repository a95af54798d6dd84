"""
Verification harness: inequality and identity checks with explicit slack
"""

from .acceptance import (
    check_abrikosov,
    check_eab_consistency,
    check_gauge_invariance,
    check_gradient_fd,
    check_lll_algebra,
    check_spectral,
    check_spectrum3d_exact,
)
from .context import SolveContext
from .lemmas import (
    check_g_bounds,
    check_ka,
    check_L4_bounds,
    check_lem1,
    check_lem2,
    check_nf,
    check_quotient_identity,
    check_virial,
    sweep_report,
)

__all__ = [
    "SolveContext",
    "check_L4_bounds",
    "check_abrikosov",
    "check_eab_consistency",
    "check_g_bounds",
    "check_gauge_invariance",
    "check_gradient_fd",
    "check_ka",
    "check_lem1",
    "check_lem2",
    "check_lll_algebra",
    "check_nf",
    "check_quotient_identity",
    "check_spectral",
    "check_spectrum3d_exact",
    "check_virial",
    "sweep_report",
]
