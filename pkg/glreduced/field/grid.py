"""
Grid construction for K_R, Q_R and the magnetic-periodic boxes Q_{R,L}
"""

import math
from typing import Sequence, Tuple, Union

import numpy as np

from ..errors import InvalidCounts, NonQuantizedFlux
from ..schemas import BoundaryCondition, Grid

# relative tolerance on R1 * R2 / 2pi being an integer
FLUX_TOLERANCE = 1e-9


def build_grid(
    extents: Sequence[float],
    counts: Union[int, Sequence[int]],
    bc: Union[BoundaryCondition, str] = BoundaryCondition.DIRICHLET,
) -> Grid:
    """Build a centred rectangular lattice.

    Args:
        extents: side lengths per axis (R, R) or (R, R, L)
        counts: sites per axis (an int is repeated on every axis)
        bc: Dirichlet (interior sites only) or magnetic-periodic

    Raises:
        NonQuantizedFlux: magnetic-periodic cross-section with R^2/2pi not in N
        InvalidCounts: any other malformed request
    """
    bc = BoundaryCondition(bc)
    extents = tuple(float(e) for e in extents)
    if len(extents) not in (2, 3):
        raise InvalidCounts(f"grids are 2D or 3D, got {len(extents)} extents")
    if isinstance(counts, (int, np.integer)):
        counts = (int(counts),) * len(extents)
    counts = tuple(int(c) for c in counts)
    if len(counts) != len(extents):
        raise InvalidCounts(f"{len(counts)} counts for {len(extents)} axes")
    if any(not (e > 0.0 and math.isfinite(e)) for e in extents):
        raise InvalidCounts(f"extents must be positive and finite, got {extents}")
    if any(c < 2 for c in counts):
        raise InvalidCounts(f"at least 2 sites per axis are required, got {counts}")

    flux_quanta = None
    if bc == BoundaryCondition.MAGNETIC_PERIODIC:
        flux_quanta = quantized_flux(extents[0], extents[1])
        spacing = tuple(e / c for e, c in zip(extents, counts))
    else:
        spacing = tuple(e / (c + 1) for e, c in zip(extents, counts))

    return Grid(
        dim=len(extents),
        extents=extents,
        counts=counts,
        spacing=spacing,
        bc=bc,
        flux_quanta=flux_quanta,
    )


def quantized_flux(R1: float, R2: float) -> int:
    """Number of flux quanta through an R1 x R2 cross-section (unit field)"""
    quanta = R1 * R2 / (2.0 * math.pi)
    n = int(round(quanta))
    if n < 1 or abs(quanta - n) > FLUX_TOLERANCE * max(1.0, quanta):
        raise NonQuantizedFlux(
            f"R1*R2/2pi = {quanta:.12g} is not a positive integer; "
            "magnetic-periodic boxes need R^2 in 2*pi*N"
        )
    return n


def side_for_quanta(n: int) -> float:
    return math.sqrt(2.0 * math.pi * n)


def axis_coordinates(grid: Grid, axis: int, padded: bool = False) -> np.ndarray:
    """Site coordinates along one axis.

    Dirichlet: interior sites lo + (i+1)h, or lo + k h (k = 0..N+1) when padded.
    Magnetic-periodic: lo + i h for one period.
    """
    lo = grid.lower[axis]
    h = grid.spacing[axis]
    n = grid.counts[axis]
    if grid.is_periodic:
        return lo + h * np.arange(n)
    if padded:
        return lo + h * np.arange(n + 2)
    return lo + h * np.arange(1, n + 1)


def site_coordinates(grid: Grid, padded: bool = False) -> Tuple[np.ndarray, ...]:
    axes = [axis_coordinates(grid, a, padded=padded) for a in range(grid.dim)]
    return tuple(np.meshgrid(*axes, indexing="ij"))


def cross_section(grid: Grid) -> Grid:
    """The 2D magnetic-periodic grid underlying a 2D or 3D periodic grid"""
    if not grid.is_periodic:
        raise InvalidCounts("cross-sections are defined for magnetic-periodic grids")
    return build_grid(grid.extents[:2], grid.counts[:2], BoundaryCondition.MAGNETIC_PERIODIC)


def dirichlet_counts(R: float, spacing: float) -> int:
    """Interior sites per axis giving a spacing close to the requested one"""
    return max(8, int(round(R / spacing)) - 1)


def periodic_counts(n: int) -> int:
    """Sites per axis for n flux quanta, keeping counts^2 >= 64 n"""
    counts = max(16, math.ceil(8.0 * math.sqrt(n)))
    return 4 * math.ceil(counts / 4)
