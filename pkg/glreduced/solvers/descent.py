"""
Two-point step-size gradient descent on complex fields.

Usage follows the update/done loop of an iterative algorithm object:

    alg = GradientDescent(objective, x0, cfg, initial_step=...)
    while not alg.done():
        alg.update()
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from ..schemas import SolverConfig, StepRule

logger = logging.getLogger(__name__)

# objective(x) -> (value, dE/d(conj x))
Objective = Callable[[np.ndarray], Tuple[float, np.ndarray]]

ARMIJO = 1e-4
NONMONOTONE_WINDOW = 10
MAX_BACKTRACKS = 40
STEP_BOUNDS = (1e-10, 1e10)


@dataclass
class DescentOutcome:
    x: np.ndarray
    value: float
    grad: np.ndarray
    residual: float
    iterations: int
    converged: bool


def _real_dot(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.real(np.vdot(a, b)))


class GradientDescent:
    """Gradient method with Barzilai-Borwein steps and a nonmonotone Armijo safeguard.

    Args:
        objective: returns the value and dE/d(conj x) at x
        x: starting point (copied)
        cfg: iteration limit, tolerance and step rule
        initial_step: first trial step (and the fixed step for StepRule.FIXED)
        residual: maps (x, grad) to the stopping measure compared with cfg.grad_tolerance
        retract: optional map applied after every step (e.g. a normalization)
    """

    def __init__(
        self,
        objective: Objective,
        x: np.ndarray,
        cfg: SolverConfig,
        initial_step: float,
        residual: Callable[[np.ndarray, np.ndarray], float],
        retract: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ):
        self.objective = objective
        self.cfg = cfg
        self.residual_fn = residual
        self.retract = retract
        self.base_step = initial_step
        self.step = initial_step
        self.iter = 0
        self.stalled = False

        self.x = np.array(x, dtype=complex, copy=True)
        if self.retract is not None:
            self.x = self.retract(self.x)
        self.value, self.grad = self.objective(self.x)
        self.residual = self.residual_fn(self.x, self.grad)
        self.history = deque([self.value], maxlen=NONMONOTONE_WINDOW)

        self.best_x, self.best_value = self.x, self.value
        self.best_grad, self.best_residual = self.grad, self.residual

    def done(self) -> bool:
        return self.converged or self.stalled or self.iter >= self.cfg.max_iterations

    @property
    def converged(self) -> bool:
        return self.residual <= self.cfg.grad_tolerance

    def update(self) -> None:
        grad_sq = _real_dot(self.grad, self.grad)
        reference = max(self.history)
        step = self.step

        for _ in range(MAX_BACKTRACKS):
            trial = self.x - step * self.grad
            if self.retract is not None:
                trial = self.retract(trial)
            value, grad = self.objective(trial)
            # directional derivative along -grad is -2 |grad|^2
            if np.isfinite(value) and value <= reference - 2.0 * ARMIJO * step * grad_sq:
                break
            step *= 0.5
        else:
            logger.debug("backtracking exhausted at iteration %d", self.iter)
            self.stalled = True
            return

        s = trial - self.x
        y = grad - self.grad
        self.x, self.value, self.grad = trial, value, grad
        self.residual = self.residual_fn(self.x, self.grad)
        self.history.append(value)
        self.iter += 1

        if self.cfg.step_rule == StepRule.ADAPTIVE_TWO_POINT:
            sy = _real_dot(s, y)
            if sy > 0.0:
                step = _real_dot(s, s) / sy
            else:
                step = self.base_step
            self.step = float(np.clip(step, STEP_BOUNDS[0] * self.base_step, STEP_BOUNDS[1] * self.base_step))
        else:
            self.step = self.base_step

        if value < self.best_value or self.converged:
            self.best_x, self.best_value = self.x, self.value
            self.best_grad, self.best_residual = self.grad, self.residual

    def run(self) -> DescentOutcome:
        while not self.done():
            self.update()
        if self.converged:
            return DescentOutcome(self.x, self.value, self.grad, self.residual, self.iter, True)
        return DescentOutcome(
            self.best_x, self.best_value, self.best_grad, self.best_residual, self.iter, False
        )
