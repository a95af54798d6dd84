"""
Shared fixtures: a quick solver configuration, small grids and an isolated cache
"""

import pytest

from glreduced.checks import SolveContext
from glreduced.field import build_grid, link_phases, side_for_quanta
from glreduced.schemas import BoundaryCondition, SolverConfig
from glreduced.utils.cache import ResultCache


@pytest.fixture
def quick_cfg():
    return SolverConfig(grad_tolerance=1e-8, max_iterations=20000, restarts=1, seed=3)


@pytest.fixture
def square():
    grid = build_grid((4.0, 4.0), 9, BoundaryCondition.DIRICHLET)
    return grid, link_phases(grid, "A0")


@pytest.fixture
def cube():
    grid = build_grid((3.0, 3.0, 3.0), 5, BoundaryCondition.DIRICHLET)
    return grid, link_phases(grid, "F")


@pytest.fixture
def torus():
    R = side_for_quanta(1)
    grid = build_grid((R, R, 2.0), (8, 8, 4), BoundaryCondition.MAGNETIC_PERIODIC)
    return grid, link_phases(grid, "F")


@pytest.fixture
def cache(tmp_path):
    return ResultCache(tmp_path / "cache")


@pytest.fixture
def small_ctx(quick_cfg):
    """Context on coarse grids: cube counts 7, square counts 9, three radii"""
    return SolveContext(
        cfg=quick_cfg,
        counts_2d=lambda R: 9,
        counts_3d=lambda R: 7,
        g_radii=(3.0, 4.0, 5.0),
        abrikosov_quanta=(1, 2),
    )
