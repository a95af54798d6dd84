import numpy as np
import pytest

from glreduced.errors import ClusterNotSeparated, GridMismatch, HypothesisViolated, WrongDegeneracy
from glreduced.field import apply_operator, build_grid, link_phases, side_for_quanta
from glreduced.schemas import BoundaryCondition, ComplexField
from glreduced.spectral import (
    gap_defect,
    lll_basis,
    lll_coefficients,
    longitudinal_energy,
    lowest_landau_eigenvalue,
    magnetic_operator,
    partition_clusters,
    project_lll,
    spectrum2d,
    spectrum3d,
)


@pytest.fixture(scope="module")
def basis2():
    return lll_basis(side_for_quanta(2), 16)


def random_field(grid, seed):
    rng = np.random.default_rng(seed)
    return ComplexField(grid=grid, values=rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))


def test_partition_clusters():
    values = [0.99, 0.995, 2.9, 2.95, 4.9, 5.0]
    assert partition_clusters(values) == [[0, 1], [2, 3], [4, 5]]
    assert partition_clusters([3.0, 3.01]) == [[0, 1]]
    assert partition_clusters([]) == []


@pytest.mark.parametrize("bc, counts", [(BoundaryCondition.DIRICHLET, 6), (BoundaryCondition.MAGNETIC_PERIODIC, 8)])
def test_sparse_operator_matches_stencil(bc, counts):
    extent = side_for_quanta(1) if bc == BoundaryCondition.MAGNETIC_PERIODIC else 3.0
    grid = build_grid((extent, extent), counts, bc)
    links = link_phases(grid, "A0")
    P = magnetic_operator(links)
    assert abs(P - P.conj().T).max() == 0.0
    u = random_field(grid, 0).values
    np.testing.assert_allclose(P @ u.ravel(), apply_operator(u, links).ravel(), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test_landau_levels(n):
    spectrum = spectrum2d(side_for_quanta(n), 16, k=n + 2)
    mu = spectrum.eigenvalues
    assert len(spectrum.lowest_cluster) == n
    assert abs(mu[0] - 1.0) <= 0.03
    assert abs(mu[n] - 3.0) <= 0.21
    assert mu == sorted(mu)


def test_spectrum2d_raises_k_to_resolve_the_gap():
    spectrum = spectrum2d(side_for_quanta(2), 16, k=1)
    assert len(spectrum.eigenvalues) == 3


def test_spectrum3d_is_the_direct_sum():
    R, L = side_for_quanta(1), 2.0 * np.pi
    planar = spectrum2d(R, 16, k=2)
    assembled = spectrum3d(R, L, 16)
    assert assembled.components
    for value, (j, m) in zip(assembled.eigenvalues, assembled.components):
        assert value == planar.eigenvalues[j] + longitudinal_energy(m, L)
    distinct = assembled.distinct_values(1e-9)
    assert distinct[1] == pytest.approx(distinct[0] + 1.0, abs=1e-12)


def test_spectrum3d_rejects_bad_height():
    with pytest.raises(ValueError):
        spectrum3d(side_for_quanta(1), 0.0, 16)


def test_lowest_landau_eigenvalue_bias():
    mu1 = lowest_landau_eigenvalue(0.2)
    assert 1.0 - 0.02 < mu1 < 1.0


def test_lll_basis_is_orthonormal(basis2):
    assert basis2.dimension == 2
    np.testing.assert_allclose(basis2.gram(), np.eye(2), atol=1e-10)
    assert basis2.max_eigenvalue_deviation <= 0.03
    assert basis2.next_eigenvalue > 2.5


def test_projection_is_idempotent_and_self_adjoint(basis2):
    u = random_field(basis2.grid, 1)
    v = random_field(basis2.grid, 2)
    pu = project_lll(u, basis2)
    np.testing.assert_allclose(project_lll(pu, basis2).values, pu.values, atol=1e-10)
    assert pu.inner(v) == pytest.approx(u.inner(project_lll(v, basis2)), abs=1e-9)
    np.testing.assert_allclose(lll_coefficients(basis2.members[1], basis2), [0.0, 1.0], atol=1e-10)


def test_projection_acts_per_slice(basis2):
    R = side_for_quanta(2)
    grid = build_grid((R, R, 1.5), (16, 16, 3), BoundaryCondition.MAGNETIC_PERIODIC)
    values = np.stack([basis2.vectors[0], 2.0 * basis2.vectors[1], np.zeros((16, 16))], axis=-1)
    field = ComplexField(grid=grid, values=values)
    np.testing.assert_allclose(project_lll(field, basis2).values, values, atol=1e-10)
    np.testing.assert_allclose(lll_coefficients(field, basis2), [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]], atol=1e-10)


def test_projection_rejects_other_grids(basis2):
    grid = build_grid((side_for_quanta(2),) * 2, 12, BoundaryCondition.MAGNETIC_PERIODIC)
    with pytest.raises(GridMismatch):
        project_lll(random_field(grid, 3), basis2)


def test_cluster_tolerance_must_fit_in_the_gap():
    with pytest.raises(ClusterNotSeparated):
        lll_basis(side_for_quanta(1), 16, cluster_tol=5.0)


def test_gap_defect(basis2):
    member = basis2.members[0]
    assert gap_defect(member, basis2, gamma=0.1) == pytest.approx(0.0, abs=1e-8)
    with pytest.raises(HypothesisViolated):
        gap_defect(random_field(basis2.grid, 4), basis2, gamma=0.01)
    with pytest.raises(ValueError):
        gap_defect(member, basis2, gamma=0.1, p=3)


def test_gap_inequality_outside_the_lowest_level(basis2):
    """Q(u) >= (3 - 0.21) ||u||^2 for u orthogonal to the lowest Landau level"""
    links = link_phases(basis2.grid, "A0")
    u = random_field(basis2.grid, 5)
    rest = u.with_values(u.values - project_lll(u, basis2).values)
    form = basis2.grid.volume_element * float(np.real(np.vdot(rest.values, apply_operator(rest.values, links))))
    assert form >= (3.0 - 0.21) * rest.l2_norm() ** 2


def test_gap_defect_of_a_two_level_field():
    R = side_for_quanta(1)
    spectrum = spectrum2d(R, 16, k=3)
    basis = lll_basis(R, 16, spectrum=spectrum)
    dV = basis.grid.volume_element
    excited = spectrum.vectors[:, 1].reshape(basis.grid.shape) / np.sqrt(dV)
    u = ComplexField(grid=basis.grid, values=basis.vectors[0] + excited)
    assert u.l2_norm() == pytest.approx(np.sqrt(2.0), rel=1e-8)
    # u - Pi_1 u is the excited mode: ||u - Pi_1 u|| / ||u|| = 1/sqrt(2)
    assert gap_defect(u, basis, gamma=1.5) * np.sqrt(1.5) == pytest.approx(1.0 / np.sqrt(2.0), rel=1e-6)


def test_under_resolved_grid_has_the_wrong_degeneracy():
    # 3 x 3 sites for 8 flux quanta: every eigenvalue is below 8 / h^2 < 2
    with pytest.raises(WrongDegeneracy):
        lll_basis(side_for_quanta(8), 3)
