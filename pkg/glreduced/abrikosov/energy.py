"""
The Abrikosov energy F_R(v) = int (1/2 |v|^4 - |v|^2) over the lowest Landau level.

With v = sum_m c_m f_m and w = c (x) c the energy is the degree-4 polynomial

    F_R(c) = 1/2 w^H T w - c^H G c,   T = dV conj(P) P^T,  P[(m, m'), x] = f_m(x) f_m'(x)

so each evaluation costs O(n^4) once T and G are assembled.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from ..errors import DimensionMismatch, NotConverged
from ..field.grid import periodic_counts, side_for_quanta
from ..schemas import AbrikosovResult, EnergyBreakdown, LLLBasis, SolverConfig
from ..spectral.lll import lll_basis

logger = logging.getLogger(__name__)

DEFAULT_RESTARTS = 16


@dataclass(frozen=True)
class AbrikosovTensors:
    gram: np.ndarray
    interaction: np.ndarray
    n: int


def abrikosov_tensors(basis: LLLBasis) -> AbrikosovTensors:
    n = basis.dimension
    dV = basis.grid.volume_element
    flat = basis.vectors.reshape(n, -1)
    products = (flat[:, None, :] * flat[None, :, :]).reshape(n * n, -1)
    return AbrikosovTensors(
        gram=dV * np.conj(flat) @ flat.T,
        interaction=dV * np.conj(products) @ products.T,
        n=n,
    )


def _parts(c: np.ndarray, tensors: AbrikosovTensors) -> Tuple[float, float, np.ndarray, np.ndarray]:
    """(int |v|^2, int |v|^4, G c, T w reshaped to n x n)"""
    w = np.outer(c, c).ravel()
    Tw = tensors.interaction @ w
    Gc = tensors.gram @ c
    l2 = float(np.real(np.vdot(c, Gc)))
    l4 = float(np.real(np.vdot(w, Tw)))
    return l2, l4, Gc, Tw.reshape(tensors.n, tensors.n)


def polynomial_value(c: np.ndarray, tensors: AbrikosovTensors) -> float:
    l2, l4, _, _ = _parts(c, tensors)
    return 0.5 * l4 - l2


def polynomial_gradient(c: np.ndarray, tensors: AbrikosovTensors) -> np.ndarray:
    """dF/d(conj c) = <f_m, (|v|^2 - 1) v>"""
    _, _, Gc, Tw = _parts(c, tensors)
    return Tw @ np.conj(c) - Gc


def abrikosov_energy(
    coefficients: np.ndarray, basis: LLLBasis, tensors: Optional[AbrikosovTensors] = None
) -> EnergyBreakdown:
    """F_R of v = sum c_m f_m.

    On the lowest Landau level the quadratic form equals ||v||^2, which is
    reported as kinetic_raw; F_R itself carries no kinetic term (b = 0).
    """
    c = np.asarray(coefficients, dtype=complex).ravel()
    if c.size != basis.dimension:
        raise DimensionMismatch(f"{c.size} coefficients for a {basis.dimension}-dimensional basis")
    tensors = tensors or abrikosov_tensors(basis)
    l2, l4, _, _ = _parts(c, tensors)
    return EnergyBreakdown(
        kinetic=0.0,
        kinetic_raw=l2,
        mass=-l2,
        quartic=0.5 * l4,
        total=0.5 * l4 - l2,
        b=0.0,
    )


def _to_real(c: np.ndarray) -> np.ndarray:
    return np.concatenate([c.real, c.imag])


def _to_complex(x: np.ndarray) -> np.ndarray:
    n = x.size // 2
    return x[:n] + 1j * x[n:]


def _descend(c0: np.ndarray, tensors: AbrikosovTensors, cfg: SolverConfig, tol: float) -> np.ndarray:
    def fun(x):
        c = _to_complex(x)
        g = polynomial_gradient(c, tensors)
        return polynomial_value(c, tensors), 2.0 * _to_real(g)

    x = _to_real(c0)
    # L-BFGS-B may stop on its function-decrease test first; restart from the iterate
    for _ in range(5):
        out = minimize(
            fun,
            x,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": cfg.max_iterations, "gtol": 1e-15, "ftol": 1e-18},
        )
        x = out.x
        if np.linalg.norm(polynomial_gradient(_to_complex(x), tensors)) <= tol:
            break
    return _to_complex(x)


def vortex_lattices(n: int) -> List[np.ndarray]:
    """Residues mod n (units R/n) of every vortex lattice of index n over the period lattice.

    Superlattices of Z^2 with index n are dual to the Hermite normal forms
    span{(a, 0), (b, d)} with a d = n and 0 <= b < a; n B^{-T} has columns
    (d, -b) and (0, a).
    """
    shapes = []
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        for b in range(a):
            i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
            points = np.stack([d * i.ravel(), a * j.ravel() - b * i.ravel()], axis=1) % n
            shapes.append(np.unique(points, axis=0))
    return shapes


def abrikosov_beta(residues: np.ndarray, n: int) -> float:
    """<|v|^4> / <|v|^2>^2 of the lowest-Landau-level function vanishing on the lattice"""
    span = np.arange(-4 * n, 4 * n + 1)
    k0, k1 = np.meshgrid(span, span, indexing="ij")
    codes = (k0 % n) * n + k1 % n
    member = np.isin(codes, residues[:, 0] * n + residues[:, 1])
    return float(np.sum(np.exp(-np.pi * (k0**2 + k1**2)[member] / n)))


def lattice_value(n: int) -> float:
    """Continuum min of F_R / R^2 over vortex-lattice states, -1 / (2 min beta); an upper bound on c(R) / R^2"""
    return -0.5 / min(abrikosov_beta(residues, n) for residues in vortex_lattices(n))


def lattice_start(residues: np.ndarray, basis: LLLBasis, tensors: AbrikosovTensors) -> np.ndarray:
    """Coefficients of the basis combination closest to vanishing on a shifted vortex lattice.

    Every grid site is tried as the shift; the one whose site-value matrix has
    the smallest singular value wins. The result is scaled to the optimal
    amplitude t^2 = int |v|^2 / int |v|^4.
    """
    n = basis.dimension
    counts = np.array(basis.grid.counts)
    sites = np.rint(residues * counts / n).astype(int)
    s0, s1 = np.meshgrid(np.arange(counts[0]), np.arange(counts[1]), indexing="ij")
    rows = (sites[None, :, 0] + s0.ravel()[:, None]) % counts[0]
    cols = (sites[None, :, 1] + s1.ravel()[:, None]) % counts[1]
    # (shifts, zeros, modes)
    matrices = np.moveaxis(basis.vectors[:, rows, cols], 0, -1)
    _, sigma, vh = np.linalg.svd(matrices)
    best = int(np.argmin(sigma[:, -1]))
    c = np.conj(vh[best, -1])
    l2, l4, _, _ = _parts(c, tensors)
    return c * np.sqrt(l2 / l4)


def minimize_cR(
    n: int,
    counts: Optional[int] = None,
    cfg: Optional[SolverConfig] = None,
    restarts: int = DEFAULT_RESTARTS,
    basis: Optional[LLLBasis] = None,
) -> AbrikosovResult:
    """c(R) = min F_R over the lowest Landau level, R = sqrt(2 pi n).

    Starts from one vortex-lattice state per lattice of index n, then from
    `restarts` seeded random coefficients; the lowest value wins and ties go
    to the earlier start.
    converged means ||<f_m, (|v|^2 - 1) v>|| <= grad_tolerance * R^2.
    """
    cfg = cfg or SolverConfig()
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    R = side_for_quanta(n)
    if basis is None:
        basis = lll_basis(R, counts or periodic_counts(n), seed=cfg.seed)
    if basis.dimension != n:
        raise DimensionMismatch(f"basis has dimension {basis.dimension}, expected {n}")

    tensors = abrikosov_tensors(basis)
    tol = cfg.grad_tolerance * R**2

    starts = [lattice_start(residues, basis, tensors) for residues in vortex_lattices(n)]
    for restart in range(restarts):
        rng = np.random.default_rng([cfg.seed, restart])
        c0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        starts.append(c0 * R / np.linalg.norm(c0))

    values = []
    best_c, best_value = None, np.inf
    for c0 in starts:
        c = _descend(c0, tensors, cfg, tol)
        value = polynomial_value(c, tensors)
        values.append(value)
        if value < best_value:
            best_c, best_value = c, value

    l2, l4, _, _ = _parts(best_c, tensors)
    defect = float(np.linalg.norm(polynomial_gradient(best_c, tensors)))
    result = AbrikosovResult(
        coefficients=best_c,
        value=best_value,
        value_over_area=best_value / R**2,
        stationarity_defect=defect,
        pairing_defect=abs(l4 - l2),
        l4_integral=l4,
        l2_integral=l2,
        n=n,
        R=R,
        restarts=restarts,
        value_spread=float(max(values) - min(values)),
        converged=defect <= tol,
        lattice_value=lattice_value(n),
    )
    if result.converged:
        logger.info("c(R) n=%d: %.10f (c/R^2 = %.8f, spread %.2e)", n, best_value, result.value_over_area, result.value_spread)
    else:
        logger.warning("c(R) n=%d not converged: stationarity defect %.3e > %.3e", n, defect, tol)
        if cfg.strict:
            raise NotConverged(f"Abrikosov minimization for n={n} has stationarity defect {defect:.3e}")
    return result
