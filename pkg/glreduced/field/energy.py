"""
Gauge-covariant energies of the reduced GL functional and their gradients.

For a field u on a grid with links U the discrete functional is

    E_b(u) = dV * [ b * sum_a sum_edges |u(x + h e_a) U - u(x)|^2 / h_a^2
                    - sum |u|^2 + 1/2 sum |u|^4 ]

which is G_{b,K_R} on 2D grids and F_{b,Q} on 3D grids. `gradient`
returns dE/d(conj u), so that E(u + eps d) - E(u) = 2 eps Re<g, d> + O(eps^2).
"""

import logging
from typing import List

import numpy as np

from ..errors import BoxOutOfDomain, GridMismatch
from ..schemas import Box, ComplexField, EnergyBreakdown, GaugeLinks, Grid
from .grid import axis_coordinates

logger = logging.getLogger(__name__)


def _check_same_grid(field: ComplexField, links: GaugeLinks) -> Grid:
    if field.grid != links.grid:
        raise GridMismatch("field and links live on different grids")
    return field.grid


def _slice(ndim: int, axis: int, sl: slice):
    index = [slice(None)] * ndim
    index[axis] = sl
    return tuple(index)


def edge_differences(values: np.ndarray, links: GaugeLinks) -> List[np.ndarray]:
    """u(head) U - u(tail) for every edge, one array per axis (indexed like the links)"""
    grid = links.grid
    diffs = []
    if grid.is_periodic:
        for axis, phase in enumerate(links.phases):
            diffs.append(np.roll(values, -1, axis=axis) * phase - values)
    else:
        padded = np.pad(values, 1)
        for axis, phase in enumerate(links.phases):
            head = padded[_slice(grid.dim, axis, slice(1, None))]
            tail = padded[_slice(grid.dim, axis, slice(None, -1))]
            diffs.append(head * phase - tail)
    return diffs


def apply_operator(values: np.ndarray, links: GaugeLinks) -> np.ndarray:
    """Discrete magnetic Laplacian -(grad - iA)^2 applied per site (no volume factor)"""
    grid = links.grid
    diffs = edge_differences(values, links)
    if grid.is_periodic:
        out = np.zeros_like(values, dtype=complex)
        for axis, (diff, phase) in enumerate(zip(diffs, links.phases)):
            out += (np.roll(diff * np.conj(phase), 1, axis=axis) - diff) / grid.spacing[axis] ** 2
        return out

    out = np.zeros(tuple(c + 2 for c in grid.counts), dtype=complex)
    for axis, (diff, phase) in enumerate(zip(diffs, links.phases)):
        h2 = grid.spacing[axis] ** 2
        out[_slice(grid.dim, axis, slice(1, None))] += diff * np.conj(phase) / h2
        out[_slice(grid.dim, axis, slice(None, -1))] -= diff / h2
    return out[(slice(1, -1),) * grid.dim]


def quadratic_form(values: np.ndarray, links: GaugeLinks) -> float:
    """int |(grad - iA)u|^2 (the unscaled kinetic term)"""
    grid = links.grid
    total = 0.0
    for axis, diff in enumerate(edge_differences(values, links)):
        total += float(np.sum(np.abs(diff) ** 2)) / grid.spacing[axis] ** 2
    return grid.volume_element * total


def _breakdown(kinetic_raw: float, density: np.ndarray, dV: float, b: float) -> EnergyBreakdown:
    mass = -dV * float(np.sum(density))
    quartic = 0.5 * dV * float(np.sum(density**2))
    kinetic = b * kinetic_raw
    return EnergyBreakdown(
        kinetic=kinetic,
        kinetic_raw=kinetic_raw,
        mass=mass,
        quartic=quartic,
        total=kinetic + mass + quartic,
        b=b,
    )


def energy_of(values: np.ndarray, links: GaugeLinks, b: float) -> EnergyBreakdown:
    """Array-level energy, used inside the solvers"""
    density = np.abs(values) ** 2
    return _breakdown(quadratic_form(values, links), density, links.grid.volume_element, b)


def gradient_of(values: np.ndarray, links: GaugeLinks, b: float) -> np.ndarray:
    """Array-level dE/d(conj u)"""
    dV = links.grid.volume_element
    return dV * (b * apply_operator(values, links) - values + np.abs(values) ** 2 * values)


def energy(field: ComplexField, links: GaugeLinks, b: float) -> EnergyBreakdown:
    """Discrete G_{b,D} (2D) or F_{b,D} (3D); Dirichlet fields vanish off the interior"""
    _check_same_grid(field, links)
    return energy_of(field.values, links, b)


def gradient(field: ComplexField, links: GaugeLinks, b: float) -> ComplexField:
    """Discrete Euler-Lagrange residual dE/d(conj u); zero at critical points"""
    _check_same_grid(field, links)
    return field.with_values(gradient_of(field.values, links, b))


def gl_residual(values: np.ndarray, links: GaugeLinks, b: float) -> float:
    """Pointwise residual of -b(grad - iA)^2 u = (1 - |u|^2) u, relative to max(1, |u|_inf)"""
    residual = gradient_of(values, links, b) / links.grid.volume_element
    scale = max(1.0, float(np.max(np.abs(values), initial=0.0)))
    return float(np.max(np.abs(residual), initial=0.0)) / scale


def _inside(coords: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return (coords >= lo) & (coords < hi)


def check_box(grid: Grid, box: Box, tol: float = 1e-12) -> None:
    if len(box.lower) != grid.dim:
        raise BoxOutOfDomain(f"box is {len(box.lower)}D, grid is {grid.dim}D")
    for lo, hi, dlo, dhi in zip(box.lower, box.upper, grid.lower, grid.upper):
        scale = tol * max(1.0, abs(dlo), abs(dhi))
        if lo < dlo - scale or hi > dhi + scale:
            raise BoxOutOfDomain(f"box [{box.lower}, {box.upper}) leaves the domain [{grid.lower}, {grid.upper}]")


def site_mask(grid: Grid, box: Box) -> np.ndarray:
    """Sites with lower <= x < upper on every axis"""
    mask = np.ones(grid.shape, dtype=bool)
    for axis in range(grid.dim):
        coords = axis_coordinates(grid, axis)
        inside = _inside(coords, box.lower[axis], box.upper[axis])
        shape = [1] * grid.dim
        shape[axis] = coords.size
        mask &= inside.reshape(shape)
    return mask


def edge_mask(grid: Grid, box: Box, axis: int) -> np.ndarray:
    """Edges along `axis` whose midpoint lies in the box (indexed like the links)"""
    padded = not grid.is_periodic
    masks = []
    for other in range(grid.dim):
        coords = axis_coordinates(grid, other, padded=padded)
        if other == axis:
            if padded:
                coords = coords[:-1]
            coords = coords + 0.5 * grid.spacing[axis]
        masks.append(_inside(coords, box.lower[other], box.upper[other]))
    mask = masks[0]
    for other in range(1, grid.dim):
        mask = np.multiply.outer(mask, masks[other])
    return mask


def local_energy(field: ComplexField, links: GaugeLinks, b: float, box: Box) -> EnergyBreakdown:
    """Energy restricted to a box: sites by position, edges by midpoint membership"""
    grid = _check_same_grid(field, links)
    check_box(grid, box)

    kinetic_raw = 0.0
    for axis, diff in enumerate(edge_differences(field.values, links)):
        mask = edge_mask(grid, box, axis)
        kinetic_raw += float(np.sum(np.abs(diff[mask]) ** 2)) / grid.spacing[axis] ** 2
    kinetic_raw *= grid.volume_element

    density = np.abs(field.values[site_mask(grid, box)]) ** 2
    return _breakdown(kinetic_raw, density, grid.volume_element, b)
