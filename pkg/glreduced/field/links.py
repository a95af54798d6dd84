"""
Peierls link phases for the constant unit field and discrete gauge transforms
"""

import numpy as np

from ..errors import DimensionMismatch, GridMismatch
from ..schemas import ComplexField, GaugeLinks, Grid, link_shape
from .grid import axis_coordinates

# A0(x1, x2) = (-x2, x1) / 2 in 2D, F(x) = (-x2/2, x1/2, 0) in 3D
POTENTIAL_DIMS = {"A0": 2, "F": 3}


def link_phases(grid: Grid, potential: str = "A0") -> GaugeLinks:
    """Exact edge phases exp(-i * int_edge A . dl) for A0 or F.

    Both potentials are linear, so the midpoint rule is exact: an x1-edge at
    height x2 picks up exp(i x2 h1 / 2), an x2-edge at abscissa x1 picks up
    exp(-i x1 h2 / 2), x3-edges are trivial. On magnetic-periodic grids the
    wrap-around edges also carry the magnetic-translation factors
    u(x + R1 e1) = exp(i R1 x2 / 2) u(x) and u(x + R2 e2) = exp(-i R2 x1 / 2) u(x),
    which are mutually consistent exactly when R1 R2 is in 2 pi N.
    """
    if potential not in POTENTIAL_DIMS:
        raise DimensionMismatch(f"unknown potential {potential!r}; expected A0 or F")
    if POTENTIAL_DIMS[potential] != grid.dim:
        raise DimensionMismatch(f"potential {potential} lives in {POTENTIAL_DIMS[potential]}D, grid is {grid.dim}D")

    padded = not grid.is_periodic
    coords = [axis_coordinates(grid, a, padded=padded) for a in range(grid.dim)]
    h1, h2 = grid.spacing[0], grid.spacing[1]

    phases = []
    for axis in range(grid.dim):
        shape = link_shape(grid, axis)
        if axis == 0:
            x2 = _broadcast(coords[1], 1, grid.dim)
            angle = np.broadcast_to(0.5 * h1 * x2, shape).copy()
            if grid.is_periodic:
                angle[-1, ...] += 0.5 * grid.extents[0] * _broadcast(coords[1], 0, grid.dim - 1)
        elif axis == 1:
            x1 = _broadcast(coords[0][: shape[0]], 0, grid.dim)
            angle = np.broadcast_to(-0.5 * h2 * x1, shape).copy()
            if grid.is_periodic:
                angle[:, -1, ...] -= 0.5 * grid.extents[1] * _broadcast(coords[0], 0, grid.dim - 1)
        else:
            angle = np.zeros(shape)
        phases.append(np.exp(1j * angle))

    return GaugeLinks(grid=grid, phases=tuple(phases), potential=potential)


def trivial_links(grid: Grid) -> GaugeLinks:
    """All links equal to one (zero potential, no boundary phases)"""
    phases = tuple(np.ones(link_shape(grid, a), dtype=complex) for a in range(grid.dim))
    return GaugeLinks(grid=grid, phases=phases, potential="custom")


def _broadcast(values: np.ndarray, axis: int, ndim: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = values.size
    return values.reshape(shape)


def plaquette_angles(links: GaugeLinks, layer: int = 0) -> np.ndarray:
    """Angles of the (x1, x2) plaquette products, counter-clockwise.

    Each entry is arg(U1(x) U2(x + e1) conj(U1(x + e2)) conj(U2(x))), which
    equals -h1 h2 for the unit field. Magnetic-periodic grids include the
    wrap-around plaquettes; 3D grids use the x3 slice `layer`.
    """
    grid = links.grid
    u1, u2 = links.phases[0], links.phases[1]
    if grid.dim == 3:
        u1, u2 = u1[:, :, layer], u2[:, :, layer]
    if grid.is_periodic:
        product = u1 * np.roll(u2, -1, axis=0) * np.conj(np.roll(u1, -1, axis=1)) * np.conj(u2)
    else:
        # padded lattice: u1 is (N1+1, N2+2), u2 is (N1+2, N2+1)
        product = u1[:, :-1] * u2[1:, :] * np.conj(u1[:, 1:]) * np.conj(u2[:-1, :])
    return np.angle(product)


def total_flux_phase(links: GaugeLinks) -> complex:
    """exp(i * sum of plaquette angles); equals 1 on magnetic-periodic grids"""
    return complex(np.exp(1j * np.sum(plaquette_angles(links))))


def gauge_transform(field: ComplexField, links: GaugeLinks, phase_field: np.ndarray):
    """Apply u -> exp(i theta) u together with the compensating link change.

    An edge from tail t to head s with value u_s U - u_t transforms as
    U -> exp(i (theta_t - theta_s)) U, so every edge difference is multiplied
    by the unimodular factor exp(i theta_t) and the energy is unchanged.
    Dirichlet grids take theta = 0 on the padded boundary, where u vanishes.
    """
    if field.grid != links.grid:
        raise GridMismatch("field and links live on different grids")
    theta = np.asarray(phase_field, dtype=float)
    if theta.shape != field.grid.shape:
        raise GridMismatch(f"phase field shape {theta.shape} != grid shape {field.grid.shape}")

    grid = field.grid
    new_phases = []
    if grid.is_periodic:
        for axis, phase in enumerate(links.phases):
            head = np.roll(theta, -1, axis=axis)
            new_phases.append(phase * np.exp(1j * (theta - head)))
    else:
        padded = np.pad(theta, 1)
        for axis, phase in enumerate(links.phases):
            tail = _take(padded, axis, slice(None, -1))
            head = _take(padded, axis, slice(1, None))
            new_phases.append(phase * np.exp(1j * (tail - head)))

    new_field = field.with_values(np.exp(1j * theta) * field.values)
    new_links = GaugeLinks(grid=grid, phases=tuple(new_phases), potential="custom")
    return new_field, new_links


def _take(array: np.ndarray, axis: int, sl: slice) -> np.ndarray:
    index = [slice(None)] * array.ndim
    index[axis] = sl
    return array[tuple(index)]
