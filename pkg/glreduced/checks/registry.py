"""
Registry of verification suites.
Each suite is a named callable producing InequalityReports; `run` collects them into a SweepReport.
"""

import logging
from typing import Callable, Dict, List

from pydantic import BaseModel

from ..bulk.theorems import check_cell_homogeneity, check_gap_defect, check_thm_l2, check_thm_l4
from ..schemas import InequalityReport, SweepReport
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

logger = logging.getLogger(__name__)

SUITE_NAMES = ["infrastructure", "spectral", "g", "lemmas", "abrikosov", "bulk", "all"]


class VerifyOptions(BaseModel):
    """Parameter grid of the acceptance sweep"""

    b_values: List[float] = [0.85, 0.9]
    R_list: List[float] = [8.0, 12.0, 16.0]
    g_b_list: List[float] = [0.0, 0.5, 0.7, 0.9, 1.1]
    bulk_b_list: List[float] = [0.85, 0.9, 0.95]
    ka_b_list: List[float] = [0.9, 0.95]
    ka_n_list: List[int] = [2, 4]
    abrikosov_n_list: List[int] = [1, 2, 3, 4, 5, 6]
    spectral_n_list: List[int] = [1, 2, 4]
    spectral_counts: int = 64


class CheckRegistry:
    """Registry of all verification suites"""

    def __init__(self, ctx: SolveContext, options: VerifyOptions = None):
        self.ctx = ctx
        self.options = options or VerifyOptions()
        self.suites = self._register_all_suites()

    def _register_all_suites(self) -> Dict[str, Callable[[], List[InequalityReport]]]:
        return {
            "infrastructure": self._infrastructure_suite,
            "spectral": self._spectral_suite,
            "g": self._g_suite,
            "lemmas": self._lemmas_suite,
            "abrikosov": self._abrikosov_suite,
            "bulk": self._bulk_suite,
        }

    @property
    def names(self) -> List[str]:
        return SUITE_NAMES

    def run(self, suite: str) -> SweepReport:
        if suite not in self.names:
            raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(self.names)}")
        selected = list(self.suites) if suite == "all" else [suite]
        report = SweepReport(suite=suite)
        for name in selected:
            logger.info("running suite %s", name)
            for item in self.suites[name]():
                report.add(item)
                report.summaries.append(
                    {"suite": name, "check": item.name, "holds": item.holds, "asserted": item.asserted}
                )
                level = logging.INFO if item.holds or not item.asserted else logging.WARNING
                logger.log(level, "%s/%s: %s", name, item.name, "holds" if item.holds else "FAILS")
        return report

    def _infrastructure_suite(self) -> List[InequalityReport]:
        seed = self.ctx.cfg.seed
        return [check_gauge_invariance(seed), check_gradient_fd(seed=seed), check_spectrum3d_exact(seed=seed)]

    def _spectral_suite(self) -> List[InequalityReport]:
        opts = self.options
        return [
            check_spectral(opts.spectral_n_list, opts.spectral_counts, self.ctx.cfg.seed),
            check_lll_algebra(ctx=self.ctx),
        ]

    def _g_suite(self) -> List[InequalityReport]:
        return [check_g_bounds(self.options.g_b_list, ctx=self.ctx)]

    def _lemmas_suite(self) -> List[InequalityReport]:
        reports = []
        R_list = self.options.R_list
        for b in self.options.b_values:
            reports.append(sweep_report("lemma_sandwich_sweep", [check_lem1(b, R, ctx=self.ctx) for R in R_list], "C_over_R2"))
            reports.extend(check_lem2(b, R, ctx=self.ctx) for R in R_list)
            reports.append(
                sweep_report("l4_bounds_sweep", [check_L4_bounds(b, R, ctx=self.ctx) for R in R_list])
            )
            reports.extend(check_virial(self.ctx.M0(b, R)) for R in R_list)
            if b < 1.0:
                reports.extend(check_quotient_identity(b, R, ctx=self.ctx) for R in R_list)
                reports.append(check_nf(b, R_list, ctx=self.ctx))
        return reports

    def _abrikosov_suite(self) -> List[InequalityReport]:
        opts = self.options
        ka = [check_ka(b, n, ctx=self.ctx) for b in opts.ka_b_list for n in opts.ka_n_list]
        return [
            check_abrikosov(opts.abrikosov_n_list, ctx=self.ctx),
            check_eab_consistency(ctx=self.ctx),
            sweep_report("ka_sweep", ka),
        ]

    def _bulk_suite(self) -> List[InequalityReport]:
        b_list = self.options.bulk_b_list
        reports = [
            check_thm_l4(b_list, ctx=self.ctx),
            check_thm_l2(b_list, ctx=self.ctx),
            check_gap_defect(b_list, ctx=self.ctx),
        ]
        reports.extend(check_cell_homogeneity(b, ctx=self.ctx) for b in b_list)
        return reports
