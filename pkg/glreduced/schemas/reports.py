"""
Report schemas for the verification harness and the command line
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckPoint(BaseModel):
    label: str
    lhs: float
    rhs: float
    slack: float = 0.0
    holds: bool
    x: Optional[float] = None


class InequalityReport(BaseModel):
    """holds <=> lhs <= rhs + slack_used (worst point for sweeps)"""

    name: str
    lhs: float
    rhs: float
    slack_used: float
    holds: bool
    # reported-only checks never fail the aggregate
    asserted: bool = True
    provenance: Dict[str, Any] = {}
    fitted_constants: Dict[str, float] = {}
    points: List[CheckPoint] = []
    notes: List[str] = []

    @classmethod
    def from_points(cls, name: str, points: List[CheckPoint], **kwargs) -> "InequalityReport":
        if not points:
            return cls(name=name, lhs=0.0, rhs=0.0, slack_used=0.0, holds=True, **kwargs)
        worst = max(points, key=lambda p: p.lhs - p.rhs - p.slack)
        return cls(
            name=name,
            lhs=worst.lhs,
            rhs=worst.rhs,
            slack_used=worst.slack,
            holds=all(p.holds for p in points),
            points=points,
            **kwargs,
        )


class SweepReport(BaseModel):
    suite: str
    reports: List[InequalityReport] = []
    summaries: List[Dict[str, Any]] = []
    passed: bool = True

    def add(self, report: InequalityReport) -> None:
        self.reports.append(report)
        if report.asserted and not report.holds:
            self.passed = False


class RunManifest(BaseModel):
    command: str
    argv: List[str] = []
    parameters: Dict[str, Any] = {}
    seeds: List[int] = []
    tolerances: Dict[str, float] = {}
    grid_sizes: List[List[int]] = []
    version: str
    wall_clock_seconds: float = 0.0
    cache_hits: int = 0
    cache_misses: int = 0
    outputs: List[str] = Field(default_factory=list)
