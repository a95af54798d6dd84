"""
Spectra of the magnetic-periodic Landau operators in 2D and 3D
"""

import logging
import math
from typing import List, Optional, Sequence, Union

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..errors import EigsNotConverged
from ..field.grid import build_grid
from ..field.links import link_phases
from ..schemas import BoundaryCondition, Spectrum
from .operator import magnetic_operator

logger = logging.getLogger(__name__)

# midpoint of the exact gap between the first two Landau levels (1 and 3)
GAP_THRESHOLD = 2.0
# operators up to this many sites are diagonalized densely
DENSE_LIMIT = 400

Counts = Union[int, Sequence[int]]


def longitudinal_energy(m: int, L: float) -> float:
    """(2 pi m / L)^2, the x3-Fourier contribution of mode m"""
    return (2.0 * math.pi * m / L) ** 2


def partition_clusters(
    eigenvalues: Sequence[float], threshold: float = GAP_THRESHOLD, rel_gap: float = 0.1
) -> List[List[int]]:
    """Group ascending eigenvalues into near-degenerate clusters.

    All values below `threshold` form the lowest cluster. Above it a new
    cluster starts whenever the step to the previous value exceeds
    rel_gap * max(1, previous).
    """
    clusters: List[List[int]] = []
    low = [i for i, v in enumerate(eigenvalues) if v < threshold]
    if low:
        clusters.append(low)
    current: List[int] = []
    for i in range(len(low), len(eigenvalues)):
        if current and eigenvalues[i] - eigenvalues[i - 1] > rel_gap * max(1.0, eigenvalues[i - 1]):
            clusters.append(current)
            current = []
        current.append(i)
    if current:
        clusters.append(current)
    return clusters


def _smallest_eigenpairs(P, k: int, seed: int):
    n = P.shape[0]
    if n <= DENSE_LIMIT or k >= n - 1:
        values, vectors = scipy.linalg.eigh(P.toarray())
        return values[:k], vectors[:, :k]

    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    try:
        values, vectors = eigsh(P, k=k, sigma=0.0, which="LM", tol=0.0, v0=v0)
    except ArpackNoConvergence as exc:
        raise EigsNotConverged(f"ARPACK returned {len(exc.eigenvalues)} of {k} eigenpairs") from exc
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def spectrum2d(R: float, counts: Counts, k: Optional[int] = None, seed: int = 0) -> Spectrum:
    """k smallest eigenvalues of the discrete P_R^{2D} on the magnetic-periodic square.

    Args:
        R: side length with R^2 / 2pi a positive integer n
        counts: sites per axis; counts^2 >= 64 n keeps the flux per plaquette small
        k: number of eigenvalues, at least n + 1 (raised with a warning)
        seed: start vector of the Krylov iteration
    """
    grid = build_grid((R, R), counts, BoundaryCondition.MAGNETIC_PERIODIC)
    n = grid.flux_quanta
    if k is None:
        k = n + 1
    if k < n + 1:
        logger.warning("k=%d cannot resolve the gap above %d flux quanta; using k=%d", k, n, n + 1)
        k = n + 1
    k = min(k, grid.site_count)

    P = magnetic_operator(link_phases(grid, "A0"))
    values, vectors = _smallest_eigenpairs(P, k, seed)
    eigenvalues = [float(v) for v in values]
    logger.debug("spectrum2d R=%g counts=%s: %s", R, grid.counts, eigenvalues)

    return Spectrum(
        eigenvalues=eigenvalues,
        clusters=partition_clusters(eigenvalues),
        gap_threshold=GAP_THRESHOLD,
        provenance={
            "R": R,
            "counts": float(grid.counts[0]),
            "spacing": grid.spacing[0],
            "flux_quanta": float(n),
            "seed": float(seed),
        },
        vectors=vectors,
    )


def spectrum3d(R: float, L: float, counts: Counts, k: Optional[int] = None, seed: int = 0) -> Spectrum:
    """Smallest eigenvalues of P^{3D}_{R,L} assembled from the 2D spectrum.

    The operator is the direct sum over Fourier modes m in x3 of
    P_R^{2D} + (2 pi m / L)^2, so the sums below the largest computed 2D
    eigenvalue are exact; no 3D eigensolve takes place.
    """
    if not L > 0.0:
        raise ValueError(f"L must be positive, got {L}")
    n = build_grid((R, R), counts, BoundaryCondition.MAGNETIC_PERIODIC).flux_quanta
    k2 = max(n + 1, k or 0)
    planar = spectrum2d(R, counts, k2, seed)
    mu = planar.eigenvalues
    window = mu[-1]

    n_max = 0
    while longitudinal_energy(n_max, L) <= window - mu[0]:
        n_max += 1

    entries = []
    for j, value in enumerate(mu):
        for m in range(-n_max, n_max + 1):
            total = value + longitudinal_energy(m, L)
            if total <= window:
                entries.append((total, j, abs(m), m))
    entries.sort()
    if k is not None:
        entries = entries[:k]

    eigenvalues = [e[0] for e in entries]
    provenance = dict(planar.provenance)
    provenance.update({"L": L, "n_max": float(n_max)})
    return Spectrum(
        eigenvalues=eigenvalues,
        clusters=partition_clusters(eigenvalues),
        gap_threshold=GAP_THRESHOLD,
        provenance=provenance,
        components=[(e[1], e[3]) for e in entries],
    )


def lowest_landau_eigenvalue(spacing: float, n: int = 4) -> float:
    """Discrete mu_1 at a given lattice spacing.

    Below 1 by roughly spacing^2 / 8, which moves the discrete critical field
    to 1 / mu_1. Evaluated on the n-quanta torus with the closest matching spacing.
    """
    R = math.sqrt(2.0 * math.pi * n)
    counts = max(4, int(round(R / spacing)))
    return spectrum2d(R, counts, k=n + 1).eigenvalues[0]
