"""
Infrastructure, spectral and Abrikosov acceptance checks
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from ..field.energy import energy_of, gradient_of, quadratic_form
from ..field.grid import build_grid, side_for_quanta
from ..field.links import gauge_transform, link_phases
from ..schemas import BoundaryCondition, CheckPoint, ComplexField, InequalityReport, SolverConfig
from ..spectral import longitudinal_energy, project_lll, spectrum2d, spectrum3d
from ..spectral.operator import rayleigh_quotient
from .context import SolveContext
from .lemmas import make_point

logger = logging.getLogger(__name__)

GAUGE_TOLERANCE = 1e-12
GRADIENT_TOLERANCE = 1e-6
PROJECTION_TOLERANCE = 1e-10
MU1_TOLERANCE = 0.03
SECOND_LEVEL_TOLERANCE = 0.07
# relative, covers the discretization of the cross-section
LATTICE_SLACK = 0.01


def _random_field(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _sample_grids():
    yield build_grid((4.0, 4.0), 12, BoundaryCondition.DIRICHLET), "A0"
    yield build_grid((3.0, 3.0, 3.0), 6, BoundaryCondition.DIRICHLET), "F"
    R = side_for_quanta(1)
    yield build_grid((R, R, 2.0), (8, 8, 4), BoundaryCondition.MAGNETIC_PERIODIC), "F"


def check_gauge_invariance(seed: int = 0, b: float = 0.7) -> InequalityReport:
    """E(e^{i theta} u, transformed links) = E(u, links) for random u and theta"""
    rng = np.random.default_rng(seed)
    points: List[CheckPoint] = []
    for grid, potential in _sample_grids():
        links = link_phases(grid, potential)
        field = ComplexField(grid=grid, values=_random_field(rng, grid.shape))
        theta = 2.0 * np.pi * rng.random(grid.shape)
        moved, moved_links = gauge_transform(field, links, theta)
        before = energy_of(field.values, links, b).total
        after = energy_of(moved.values, moved_links, b).total
        defect = abs(after - before) / (1.0 + abs(before))
        points.append(make_point(f"gauge defect {grid.dim}D {grid.bc.value}", defect, GAUGE_TOLERANCE))
    return InequalityReport.from_points("gauge_invariance", points, provenance={"seed": seed, "b": b})


def check_gradient_fd(directions: int = 20, seed: int = 0, b: float = 0.7, eps: float = 1e-5) -> InequalityReport:
    """2 Re<g, d> against central differences of E along random directions d"""
    rng = np.random.default_rng(seed)
    points: List[CheckPoint] = []
    grids = list(_sample_grids())
    for index in range(directions):
        grid, potential = grids[index % len(grids)]
        links = link_phases(grid, potential)
        u = _random_field(rng, grid.shape)
        d = _random_field(rng, grid.shape)
        d /= np.linalg.norm(d)
        analytic = 2.0 * float(np.real(np.vdot(gradient_of(u, links, b), d)))
        plus = energy_of(u + eps * d, links, b).total
        minus = energy_of(u - eps * d, links, b).total
        numeric = (plus - minus) / (2.0 * eps)
        relative = abs(numeric - analytic) / max(abs(analytic), 1e-8)
        points.append(make_point(f"gradient direction {index}", relative, GRADIENT_TOLERANCE))
    return InequalityReport.from_points("gradient_fd", points, provenance={"seed": seed, "b": b, "eps": eps})


def check_spectral(n_list: Sequence[int] = (1, 2, 4), counts: int = 64, seed: int = 0) -> InequalityReport:
    """Lowest cluster of size n, |mu_1 - 1| <= 0.03 and the next value within 7% of 3"""
    points: List[CheckPoint] = []
    constants = {}
    for n in n_list:
        R = side_for_quanta(n)
        spectrum = spectrum2d(R, counts, k=n + 2, seed=seed)
        mu = spectrum.eigenvalues
        size = len(spectrum.lowest_cluster)
        points.append(make_point(f"cluster size n={n}", abs(size - n), 0.0))
        points.append(make_point(f"|mu_1 - 1| n={n}", abs(mu[0] - 1.0), MU1_TOLERANCE))
        points.append(make_point(f"|mu_(n+1) - 3| n={n}", abs(mu[n] - 3.0), 3.0 * SECOND_LEVEL_TOLERANCE))
        constants[f"mu_1@n={n}"] = mu[0]
        constants[f"mu_(n+1)@n={n}"] = mu[n]
    return InequalityReport.from_points(
        "landau_spectrum", points, provenance={"counts": counts, "seed": seed, "n_list": list(n_list)}, fitted_constants=constants
    )


def check_spectrum3d_exact(n: int = 1, L: float = 2.0 * math.pi, counts: int = 32, seed: int = 0) -> InequalityReport:
    """3D values coincide bitwise with mu_j(2D) + (2 pi m / L)^2; at L = 2 pi the second distinct value is mu_1 + 1"""
    R = side_for_quanta(n)
    planar = spectrum2d(R, counts, k=n + 1, seed=seed)
    assembled = spectrum3d(R, L, counts, seed=seed)
    mismatches = sum(
        1
        for value, (j, m) in zip(assembled.eigenvalues, assembled.components)
        if value != planar.eigenvalues[j] + longitudinal_energy(m, L)
    )
    points = [make_point("direct-sum mismatches", float(mismatches), 0.0)]
    distinct = assembled.distinct_values(1e-9)
    if abs(L - 2.0 * math.pi) < 1e-12 and len(distinct) > 1:
        points.append(make_point("second distinct value = mu_1 + 1", abs(distinct[1] - (distinct[0] + 1.0)), 1e-12))
    return InequalityReport.from_points(
        "spectrum3d_direct_sum", points, provenance={"n": n, "L": L, "counts": counts, "seed": seed}
    )


def check_lll_algebra(n: int = 2, counts: int = 32, samples: int = 20, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """Gram identity, Rayleigh quotients in the cluster window, idempotence,
    self-adjointness and the gap inequality Q(Pi_2 f) >= (3 - 0.21)||Pi_2 f||^2"""
    ctx = ctx or SolveContext()
    basis = ctx.lll(n, counts)
    grid = basis.grid
    links = link_phases(grid, "A0")
    rng = np.random.default_rng([ctx.cfg.seed, n])

    points: List[CheckPoint] = []
    gram_defect = float(np.max(np.abs(basis.gram() - np.eye(basis.dimension))))
    points.append(make_point("gram defect", gram_defect, PROJECTION_TOLERANCE))
    for m, member in enumerate(basis.members):
        quotient = rayleigh_quotient(member, links)
        points.append(make_point(f"rayleigh f_{m} above window", quotient, 1.0 + basis.cluster_tol))
        points.append(make_point(f"rayleigh f_{m} below window", 1.0 - basis.cluster_tol, quotient))

    for sample in range(samples):
        u = ComplexField(grid=grid, values=_random_field(rng, grid.shape))
        v = ComplexField(grid=grid, values=_random_field(rng, grid.shape))
        pu = project_lll(u, basis)
        ppu = project_lll(pu, basis)
        scale = u.l2_norm()
        points.append(make_point(f"idempotence {sample}", pu.with_values(ppu.values - pu.values).l2_norm() / scale, PROJECTION_TOLERANCE))
        adjoint = abs(pu.inner(v) - u.inner(project_lll(v, basis)))
        points.append(make_point(f"self-adjointness {sample}", adjoint / (scale * v.l2_norm()), PROJECTION_TOLERANCE))
        rest = u.values - pu.values
        norm_sq = grid.volume_element * float(np.sum(np.abs(rest) ** 2))
        form = quadratic_form(rest, links)
        points.append(make_point(f"gap inequality {sample}", (3.0 - 0.21) * norm_sq, form, 1e-10 * form))

    return InequalityReport.from_points(
        "lll_algebra",
        points,
        provenance={"n": n, "counts": counts, "samples": samples, "seed": ctx.cfg.seed},
        fitted_constants={"max_eigenvalue_deviation": basis.max_eigenvalue_deviation, "next_eigenvalue": basis.next_eigenvalue},
    )


def check_abrikosov(n_list: Sequence[int] = (1, 2, 3, 4, 5, 6), cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """c(R)/R^2 in [-1/2, 0), stationarity pairing, the one-mode closed form and the vortex-lattice bound.

    c(2R)/(2R)^2 <= c(R)/R^2 holds since four copies of a minimizer tile the
    doubled cell; it is asserted for every pair (n, 4n) in n_list. The
    successive differences are reported: on square cells c(R)/R^2 follows the
    best vortex lattice of index n, which is not monotone in n.
    """
    ctx = ctx or SolveContext(cfg)
    points: List[CheckPoint] = []
    constants = {}
    ratios = {}
    for n in n_list:
        result = ctx.cR(n)
        ratio = result.value_over_area
        ratios[n] = ratio
        constants[f"c_over_R2@n={n}"] = ratio
        constants[f"spread@n={n}"] = result.value_spread
        points.append(make_point(f"c/R^2 >= -1/2 at n={n}", -0.5, ratio, 1e-12, x=n))
        points.append(CheckPoint(label=f"c/R^2 < 0 at n={n}", lhs=ratio, rhs=0.0, holds=ratio < 0.0, x=n))
        points.append(make_point(f"pairing at n={n}", result.pairing_defect, 1e-6 * result.R**2, x=n))
        if result.lattice_value is not None:
            constants[f"lattice_value@n={n}"] = result.lattice_value
            slack = LATTICE_SLACK * abs(result.lattice_value)
            points.append(make_point(f"c/R^2 <= vortex-lattice value at n={n}", ratio, result.lattice_value, slack, x=n))
        if n == 1:
            basis = ctx.lll(1)
            f = basis.vectors[0]
            dV = basis.grid.volume_element
            s2 = dV * float(np.sum(np.abs(f) ** 2))
            s4 = dV * float(np.sum(np.abs(f) ** 4))
            closed = -(s2**2) / (2.0 * s4)
            constants["one_mode_closed_form"] = closed
            points.append(make_point("one-mode closed form", abs(result.value - closed) / abs(closed), 1e-8, x=1))

    for n in ratios:
        if 4 * n in ratios:
            points.append(make_point(f"tiling n={n} -> {4 * n}", ratios[4 * n], ratios[n], LATTICE_SLACK * abs(ratios[n]), x=4 * n))
    ordered = sorted(ratios)
    for a, b in zip(ordered, ordered[1:]):
        constants[f"diff@{a}->{b}"] = ratios[b] - ratios[a]
    return InequalityReport.from_points(
        "abrikosov", points, provenance={"n_list": list(n_list), "seed": ctx.cfg.seed}, fitted_constants=constants
    )


def check_eab_consistency(cfg: Optional[SolverConfig] = None, ctx: Optional[SolveContext] = None) -> InequalityReport:
    """The tail of c(R)/R^2 and the fit of g-hat(b)/(1 - b)^2 agree within 10%"""
    ctx = ctx or SolveContext(cfg)
    estimate = ctx.eab(cross_check=True)
    tail, cross = estimate.extrapolated_EAb, estimate.cross_check_EAb
    return InequalityReport.from_points(
        "eab_consistency",
        [make_point("|E_Ab(c) - E_Ab(g)|", abs(tail - cross), 0.1 * abs(tail))],
        provenance={"n_list": [s[0] for s in estimate.sequence], "g_radii": list(ctx.g_radii)},
        fitted_constants={"E_Ab_tail": tail, "E_Ab_cross_check": cross, "E_Ab_cross_check_mu1": estimate.cross_check_EAb_mu1},
    )
