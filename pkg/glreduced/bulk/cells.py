"""
Per-box density statistics over a deterministic tiling of the sample.

Tiles may be shifted by a fraction of their size; on magnetic-periodic grids
a tile that crosses the boundary is split into in-domain pieces whose site
sums and local energies are added.
"""

import itertools
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import PartitionInvalid
from ..field.energy import local_energy, site_mask
from ..field.links import link_phases
from ..schemas import Box, CellRecord, CellStats, EnergyBreakdown, GaugeLinks, Grid, MinResult

logger = logging.getLogger(__name__)


class PartitionSpec(BaseModel):
    """divisions per axis and an origin shift in units of the tile size (each in [0, 1))"""

    model_config = ConfigDict(frozen=True)

    divisions: Tuple[int, ...]
    offset: Optional[Tuple[float, ...]] = Field(default=None)


def _sum_breakdowns(parts: Sequence[EnergyBreakdown], b: float) -> EnergyBreakdown:
    kinetic_raw = sum(p.kinetic_raw for p in parts)
    mass = sum(p.mass for p in parts)
    quartic = sum(p.quartic for p in parts)
    return EnergyBreakdown(
        kinetic=b * kinetic_raw,
        kinetic_raw=kinetic_raw,
        mass=mass,
        quartic=quartic,
        total=b * kinetic_raw + mass + quartic,
        b=b,
    )


def _validate(grid: Grid, spec: PartitionSpec) -> Tuple[float, ...]:
    if len(spec.divisions) != grid.dim:
        raise PartitionInvalid(f"{len(spec.divisions)} divisions for a {grid.dim}D grid")
    if any(d < 1 for d in spec.divisions):
        raise PartitionInvalid(f"divisions must be positive, got {spec.divisions}")
    offset = spec.offset or (0.0,) * grid.dim
    if len(offset) != grid.dim or any(not 0.0 <= o < 1.0 for o in offset):
        raise PartitionInvalid(f"offsets must be {grid.dim} fractions in [0, 1), got {offset}")
    if any(o > 0.0 for o in offset) and not grid.is_periodic:
        raise PartitionInvalid("shifted tilings need a magnetic-periodic grid")
    for extent, count, d in zip(grid.extents, grid.counts, spec.divisions):
        if extent / d < extent / count * (1.0 - 1e-12):
            raise PartitionInvalid(f"{d} divisions leave tiles thinner than one lattice spacing")
    return offset


def _pieces(lo: float, hi: float, d_lo: float, d_hi: float) -> List[Tuple[float, float]]:
    """[lo, hi) folded into the period [d_lo, d_hi)"""
    if hi <= d_hi + 1e-12 * max(1.0, abs(d_hi)):
        return [(lo, min(hi, d_hi))]
    return [(lo, d_hi), (d_lo, d_lo + (hi - d_hi))]


def _boundary(grid: Grid, axis: int, t: float, outer: bool) -> float:
    """Move a tile boundary a quarter spacing past the nearest lattice plane.

    Sites sit on whole multiples of the spacing from the lower face and edge
    midpoints on half multiples, so neither ever lies on a boundary. The
    faces of a Dirichlet box stay where they are.
    """
    if outer and not grid.is_periodic:
        return t
    lo, h = grid.lower[axis], grid.spacing[axis]
    return lo + (round((t - lo) / h) + 0.25) * h


def tile_boxes(grid: Grid, spec: PartitionSpec) -> List[Tuple[Box, List[Box]]]:
    """(nominal tile, in-domain pieces) in C order over the tile indices"""
    offset = _validate(grid, spec)
    sizes = [e / d for e, d in zip(grid.extents, spec.divisions)]
    planes = []
    for a, d in enumerate(spec.divisions):
        raw = [grid.lower[a] + (k + offset[a]) * sizes[a] for k in range(d + 1)]
        planes.append([_boundary(grid, a, t, k in (0, d)) for k, t in enumerate(raw)])

    tiles = []
    for index in itertools.product(*(range(d) for d in spec.divisions)):
        lower = tuple(planes[a][index[a]] for a in range(grid.dim))
        upper = tuple(planes[a][index[a] + 1] for a in range(grid.dim))
        per_axis = [_pieces(lower[a], upper[a], grid.lower[a], grid.upper[a]) for a in range(grid.dim)]
        pieces = [
            Box(lower=tuple(p[0] for p in combo), upper=tuple(p[1] for p in combo))
            for combo in itertools.product(*per_axis)
        ]
        tiles.append((Box(lower=lower, upper=upper), pieces))
    return tiles


def cell_statistics(min_result: MinResult, spec: PartitionSpec, links: Optional[GaugeLinks] = None) -> CellStats:
    """Means of |u|^2, |u|^4 and local energies per tile.

    Raises:
        PartitionInvalid: malformed divisions or offsets
    """
    field = min_result.field
    grid = field.grid
    b = min_result.provenance.b
    if links is None:
        potential = "A0" if grid.dim == 2 else "F"
        links = link_phases(grid, potential)

    density = np.abs(field.values) ** 2
    dV = grid.volume_element
    records: List[CellRecord] = []
    for tile, pieces in tile_boxes(grid, spec):
        sites = 0
        l2 = 0.0
        l4 = 0.0
        energies = []
        for piece in pieces:
            mask = site_mask(grid, piece)
            sites += int(mask.sum())
            l2 += float(np.sum(density[mask]))
            l4 += float(np.sum(density[mask] ** 2))
            energies.append(local_energy(field, links, b, piece))
        if sites == 0:
            raise PartitionInvalid(f"tile {tile.lower}..{tile.upper} contains no sites")
        records.append(
            CellRecord(
                box=tile,
                sites=sites,
                volume=sites * dV,
                mean_density=l2 / sites,
                mean_quartic=l4 / sites,
                energy=_sum_breakdowns(energies, b),
            )
        )

    total_sites = sum(r.sites for r in records)
    if total_sites != grid.site_count:
        raise PartitionInvalid(f"tiles cover {total_sites} of {grid.site_count} sites")
    global_density = float(np.mean(density))
    global_quartic = float(np.mean(density**2))
    quartics = [r.mean_quartic for r in records]
    spread = (max(quartics) - min(quartics)) / global_quartic if global_quartic > 0.0 else 0.0
    correction = min_result.breakdown.total - sum(r.energy.total for r in records)

    logger.debug("cell statistics %s: %d tiles, quartic spread %.3f", spec.divisions, len(records), spread)
    return CellStats(
        records=records,
        global_mean_density=global_density,
        global_mean_quartic=global_quartic,
        quartic_spread=spread,
        kinetic_correction=correction,
    )
