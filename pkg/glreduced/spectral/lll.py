"""
Lowest-Landau-level basis, the projection Pi_1 and the spectral-gap defect
"""

import logging
from typing import Optional

import numpy as np

from ..errors import ClusterNotSeparated, GridMismatch, HypothesisViolated, WrongDegeneracy
from ..field.energy import quadratic_form
from ..field.grid import build_grid
from ..field.links import link_phases
from ..schemas import BoundaryCondition, ComplexField, GaugeLinks, LLLBasis, Spectrum
from .spectrum import Counts, spectrum2d

logger = logging.getLogger(__name__)


def lll_basis(
    R: float,
    counts: Counts,
    cluster_tol: float = 0.1,
    seed: int = 0,
    spectrum: Optional[Spectrum] = None,
) -> LLLBasis:
    """Orthonormal basis of the lowest eigenvalue cluster of P_R^{2D}.

    Raises:
        WrongDegeneracy: the cluster below the gap threshold does not have n members
        ClusterNotSeparated: max(cluster) + cluster_tol reaches the next eigenvalue
    """
    grid = build_grid((R, R), counts, BoundaryCondition.MAGNETIC_PERIODIC)
    n = grid.flux_quanta
    if spectrum is None:
        spectrum = spectrum2d(R, counts, k=n + 2, seed=seed)

    cluster = spectrum.lowest_cluster
    if len(cluster) != n:
        raise WrongDegeneracy(
            f"lowest cluster has {len(cluster)} members for {n} flux quanta; the grid is under-resolved"
        )
    if len(spectrum.eigenvalues) <= n:
        raise ClusterNotSeparated(f"need at least {n + 1} eigenvalues to check the gap")
    top = max(spectrum.eigenvalues[i] for i in cluster)
    following = spectrum.eigenvalues[n]
    if top + cluster_tol >= following:
        raise ClusterNotSeparated(
            f"cluster top {top:.6f} + tol {cluster_tol} reaches the next eigenvalue {following:.6f}"
        )

    # Euclidean QR, then rescale to the L2 norm with volume element dV
    q, _ = np.linalg.qr(spectrum.vectors[:, cluster])
    vectors = (q.T / np.sqrt(grid.volume_element)).reshape((n,) + grid.shape)
    cluster_values = [spectrum.eigenvalues[i] for i in cluster]
    deviation = max(abs(v - 1.0) for v in cluster_values)
    logger.info("LLL basis R=%g counts=%s: dimension %d, deviation %.3e", R, grid.counts, n, deviation)

    return LLLBasis(
        grid=grid,
        vectors=vectors,
        eigenvalues=cluster_values,
        dimension=n,
        max_eigenvalue_deviation=deviation,
        cluster_tol=cluster_tol,
        next_eigenvalue=following,
    )


def _check_compatible(field: ComplexField, basis: LLLBasis) -> None:
    grid = field.grid
    plane = basis.grid
    if not grid.is_periodic:
        raise GridMismatch("the projection acts on magnetic-periodic fields")
    if grid.counts[:2] != plane.counts or not np.allclose(grid.extents[:2], plane.extents, rtol=1e-12, atol=0.0):
        raise GridMismatch(
            f"field cross-section {grid.extents[:2]}/{grid.counts[:2]} does not match basis {plane.extents}/{plane.counts}"
        )


def lll_coefficients(field: ComplexField, basis: LLLBasis) -> np.ndarray:
    """int f_m-bar u over the cross-section; shape (n,) in 2D and (n, N3) in 3D"""
    _check_compatible(field, basis)
    dV2 = basis.grid.volume_element
    return dV2 * np.einsum("mij,ij...->m...", np.conj(basis.vectors), field.values)


def project_lll(field: ComplexField, basis: LLLBasis) -> ComplexField:
    """Pi_1 u, applied independently on every x3 slice of a 3D field"""
    coefficients = lll_coefficients(field, basis)
    return field.with_values(np.einsum("mij,m...->ij...", basis.vectors, coefficients))


def gap_defect(
    field: ComplexField,
    basis: LLLBasis,
    gamma: float,
    p: int = 2,
    links: Optional[GaugeLinks] = None,
) -> float:
    """||u - Pi_1 u||_p / (sqrt(gamma) ||u||_2) for u with Q(u) <= (1 + gamma) ||u||^2.

    Raises:
        HypothesisViolated: the quadratic-form hypothesis fails
    """
    if p not in (2, 4, 6):
        raise ValueError(f"p must be 2, 4 or 6, got {p}")
    if not gamma > 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    _check_compatible(field, basis)
    if links is None:
        links = link_phases(field.grid, "A0" if field.grid.dim == 2 else "F")
    elif links.grid != field.grid:
        raise GridMismatch("links and field live on different grids")

    norm = field.l2_norm()
    if norm == 0.0:
        return 0.0
    form = quadratic_form(field.values, links)
    bound = (1.0 + gamma) * norm**2
    if form > bound * (1.0 + 1e-12):
        raise HypothesisViolated(f"Q(u) = {form:.6g} exceeds (1 + gamma) ||u||^2 = {bound:.6g}")

    remainder = field.with_values(field.values - project_lll(field, basis).values)
    return remainder.lp_norm(p) / (np.sqrt(gamma) * norm)
