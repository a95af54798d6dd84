"""
Field schemas: complex site values and per-edge gauge links
"""

from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from .grid import Grid


class ComplexField(BaseModel):
    """Complex value per grid site (psi, u, v, w of the reduced model)"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: Grid
    values: np.ndarray

    @model_validator(mode="after")
    def _check_values(self):
        if self.values.shape != self.grid.shape:
            raise ValueError(f"field shape {self.values.shape} != grid shape {self.grid.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite entries")
        return self

    @classmethod
    def zeros(cls, grid: Grid) -> "ComplexField":
        return cls(grid=grid, values=np.zeros(grid.shape, dtype=complex))

    @classmethod
    def constant(cls, grid: Grid, value: complex) -> "ComplexField":
        return cls(grid=grid, values=np.full(grid.shape, value, dtype=complex))

    def with_values(self, values: np.ndarray) -> "ComplexField":
        return ComplexField(grid=self.grid, values=np.asarray(values, dtype=complex))

    def l2_norm(self) -> float:
        return float(np.sqrt(self.grid.volume_element * np.sum(np.abs(self.values) ** 2)))

    def lp_norm(self, p: float) -> float:
        return float((self.grid.volume_element * np.sum(np.abs(self.values) ** p)) ** (1.0 / p))

    def inner(self, other: "ComplexField") -> complex:
        """L2 inner product, antilinear in the first slot"""
        return complex(self.grid.volume_element * np.vdot(self.values, other.values))


class GaugeLinks(BaseModel):
    """Unit-modulus edge phases U = exp(-i * integral of A along the edge).

    phases[a] holds the links of the edges along axis a, indexed by tail site.
    Magnetic-periodic grids: shape == grid.shape, the last slice along a is the
    wrap-around edge with the magnetic-translation phase folded in.
    Dirichlet grids: indexed on the zero-padded lattice (counts + 2 per axis,
    counts + 1 along a).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: Grid
    phases: Tuple[np.ndarray, ...]
    potential: str

    @model_validator(mode="after")
    def _check_phases(self):
        if len(self.phases) != self.grid.dim:
            raise ValueError("one link array per axis is required")
        for axis, phase in enumerate(self.phases):
            if phase.shape != link_shape(self.grid, axis):
                raise ValueError(f"links along axis {axis} have shape {phase.shape}")
            if np.max(np.abs(np.abs(phase) - 1.0), initial=0.0) > 1e-14:
                raise ValueError(f"links along axis {axis} are not unit modulus")
        return self


def link_shape(grid: Grid, axis: int) -> Tuple[int, ...]:
    if grid.is_periodic:
        return grid.shape
    shape = [c + 2 for c in grid.counts]
    shape[axis] -= 1
    return tuple(shape)
