"""
Solver configuration schema
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class StepRule(str, Enum):
    FIXED = "fixed"
    ADAPTIVE_TWO_POINT = "adaptive-two-point"


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(default=20000, ge=1)
    # l-infinity norm of the discrete GL residual, relative to max(1, |u|_inf)
    grad_tolerance: float = Field(default=1e-8, gt=0.0)
    step_rule: StepRule = StepRule.ADAPTIVE_TWO_POINT
    restarts: int = Field(default=2, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    strict: bool = False

    def with_updates(self, **changes) -> "SolverConfig":
        """Copy with overrides, re-validated"""
        data = self.model_dump()
        data.update({k: v for k, v in changes.items() if v is not None})
        return SolverConfig(**data)
