"""
Ground-state subcommands: m0, M0, quotient and the g(b) sweep
"""

import argparse
import itertools
from functools import partial
from typing import Any, Dict

from ..schemas import MinResult, SolverConfig
from ..solvers import counts_rule_2d, counts_rule_3d, fit_g_estimate, minimize_M0, minimize_m0, minimize_quotient
from .base import CommandOutcome, Session, solve_cached, solve_params

SOLVERS = {
    "m0": (minimize_m0, counts_rule_2d),
    "M0": (minimize_M0, counts_rule_3d),
    "quotient": (minimize_quotient, counts_rule_3d),
}


def solve_task(problem: str, task: Dict[str, Any]) -> MinResult:
    """Pool worker: one ground-state solve from its cache parameters"""
    solve, _ = SOLVERS[problem]
    return solve(task["b"], task["R"], task["counts"], SolverConfig(**task["cfg"]))


def _tasks(session: Session, problem: str, b_values, R_values, counts):
    _, rule = SOLVERS[problem]
    return [
        solve_params(session.cfg, b=b, R=R, counts=counts or rule(R))
        for b, R in itertools.product(b_values, R_values)
    ]


def run_minimize(args: argparse.Namespace, session: Session) -> CommandOutcome:
    problem = args.command
    tasks = _tasks(session, problem, args.b, args.R, args.n)
    results = solve_cached(session, problem, tasks, MinResult, partial(solve_task, problem))
    passed = all(r.converged for r in results) or not session.cfg.strict
    return CommandOutcome(
        groups={problem: results},
        passed=passed,
        grid_sizes=[list(r.field.grid.counts) for r in results],
    )


def run_g(args: argparse.Namespace, session: Session) -> CommandOutcome:
    R_values = sorted(args.R)
    if len(R_values) < 3:
        raise ValueError(f"g needs at least 3 radii, got {len(R_values)}")
    tasks = _tasks(session, "m0", args.b, R_values, args.n)
    results = solve_cached(session, "m0", tasks, MinResult, partial(solve_task, "m0"))

    estimates = []
    per_b = len(R_values)
    for i, b in enumerate(args.b):
        chunk = results[i * per_b:(i + 1) * per_b]
        values = [(R, r.value / R**2) for R, r in zip(R_values, chunk)]
        estimates.append(fit_g_estimate(b, values, converged=all(r.converged for r in chunk)))
    return CommandOutcome(
        groups={"g": estimates},
        formats=("csv", "plotdata"),
        grid_sizes=[list(r.field.grid.counts) for r in results],
    )


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    for name, help_text in (
        ("m0", "2D Dirichlet ground state m0(b, R) on the square"),
        ("M0", "3D Dirichlet ground state M0(b, R) on the cube"),
        ("quotient", "minimum of the linear GL form over unit L4 fields on the cube"),
    ):
        parser = subparsers.add_parser(name, parents=[parent], help=help_text)
        parser.add_argument("--b", type=float, nargs="+", required=True, help="reduced field strength(s)")
        parser.add_argument("--R", type=float, nargs="+", required=True, help="side length(s)")
        parser.add_argument("--n", type=int, default=None, help="interior sites per axis (default: spacing rule)")
        parser.set_defaults(handler=run_minimize)

    parser = subparsers.add_parser("g", parents=[parent], help="thermodynamic limit g(b) from m0(b, R) / R^2")
    parser.add_argument("--b", type=float, nargs="+", required=True)
    parser.add_argument("--R", type=float, nargs="+", default=[8.0, 12.0, 16.0])
    parser.add_argument("--n", type=int, default=None, help="fixed interior sites per axis for every R")
    parser.set_defaults(handler=run_g)
