"""
Geometry schemas: lattices, boxes and reduced model parameters
"""

import math
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class BoundaryCondition(str, Enum):
    DIRICHLET = "dirichlet"
    MAGNETIC_PERIODIC = "magnetic_periodic"


class Grid(BaseModel):
    """Rectangular lattice over K_R, Q_R or Q_{R,L}, centred at the origin.

    Dirichlet grids store interior sites only (spacing * (counts + 1) = extent);
    magnetic-periodic grids store one period (spacing * counts = extent).
    """

    model_config = ConfigDict(frozen=True)

    dim: int
    extents: Tuple[float, ...]
    counts: Tuple[int, ...]
    spacing: Tuple[float, ...]
    bc: BoundaryCondition
    flux_quanta: Optional[int] = None

    @model_validator(mode="after")
    def _check_shape(self):
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")
        if not (len(self.extents) == len(self.counts) == len(self.spacing) == self.dim):
            raise ValueError("extents, counts and spacing must have one entry per axis")
        return self

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.counts)

    @property
    def site_count(self) -> int:
        return math.prod(self.counts)

    @property
    def volume_element(self) -> float:
        return math.prod(self.spacing)

    @property
    def volume(self) -> float:
        """Continuum volume of the domain"""
        return math.prod(self.extents)

    @property
    def lower(self) -> Tuple[float, ...]:
        return tuple(-0.5 * e for e in self.extents)

    @property
    def upper(self) -> Tuple[float, ...]:
        return tuple(0.5 * e for e in self.extents)

    @property
    def is_periodic(self) -> bool:
        return self.bc == BoundaryCondition.MAGNETIC_PERIODIC


class Box(BaseModel):
    """Axis-aligned cuboid [lower, upper) used for local energies and cell statistics"""

    model_config = ConfigDict(frozen=True)

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_bounds(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper corners differ in dimension")
        if any(hi <= lo for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("box must have positive extent along every axis")
        return self

    @classmethod
    def centered(cls, center, half_extents) -> "Box":
        return cls(
            lower=tuple(c - h for c, h in zip(center, half_extents)),
            upper=tuple(c + h for c, h in zip(center, half_extents)),
        )

    @classmethod
    def cuboid(cls, center, ell: float, L: float) -> "Box":
        """(ell, L)-box: square cross-section of side ell, height L"""
        return cls.centered(center, (0.5 * ell, 0.5 * ell, 0.5 * L))

    @property
    def center(self) -> Tuple[float, ...]:
        return tuple(0.5 * (lo + hi) for lo, hi in zip(self.lower, self.upper))

    @property
    def half_extents(self) -> Tuple[float, ...]:
        return tuple(0.5 * (hi - lo) for lo, hi in zip(self.lower, self.upper))


class ReducedParams(BaseModel):
    """Bulk sample parameters after the rescaling x -> x sqrt(kappa H).

    b plays the role of H/kappa, R is the side of the cross-section
    (R^2 / 2pi integer) and L the height of the box.
    """

    model_config = ConfigDict(frozen=True)

    b: float
    R: float
    L: float

    @field_validator("b")
    @classmethod
    def _b_range(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError(f"b must be positive, got {value}")
        return value

    @field_validator("R", "L")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError(f"lengths must be positive, got {value}")
        return value

    @property
    def flux_quanta(self) -> float:
        return self.R * self.R / (2.0 * math.pi)

    @classmethod
    def from_quanta(cls, b: float, n: int, L: Optional[float] = None) -> "ReducedParams":
        R = math.sqrt(2.0 * math.pi * n)
        return cls(b=b, R=R, L=R if L is None else L)
