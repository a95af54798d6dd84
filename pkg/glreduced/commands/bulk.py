"""
gl3d: periodic frozen-field minimizer on Q_{R,L} and its cell statistics
"""

import argparse
from typing import Any, Dict

from ..bulk import PartitionSpec, bulk_counts, cell_statistics, solve_periodic_gl
from ..field.grid import side_for_quanta
from ..schemas import MinResult, ReducedParams, SolverConfig
from .base import CommandOutcome, Session, solve_cached, solve_params


def gl3d_task(task: Dict[str, Any]) -> MinResult:
    params = ReducedParams(b=task["b"], R=task["R"], L=task["L"])
    return solve_periodic_gl(params, tuple(task["counts"]), SolverConfig(**task["cfg"]))


def run_gl3d(args: argparse.Namespace, session: Session) -> CommandOutcome:
    R = side_for_quanta(args.n_quanta)
    L = args.L if args.L is not None else R
    tasks = []
    for b in args.b:
        params = ReducedParams(b=b, R=R, L=L)
        counts = list(args.grid) if args.grid else list(bulk_counts(params))
        tasks.append(solve_params(session.cfg, b=b, R=R, L=L, counts=counts))
    results = solve_cached(session, "gl3d", tasks, MinResult, gl3d_task)

    spec = PartitionSpec(divisions=tuple(args.divisions), offset=tuple(args.offset) if args.offset else None)
    cells = [cell_statistics(r, spec) for r in results]
    passed = all(r.converged for r in results) or not session.cfg.strict
    return CommandOutcome(
        groups={"gl3d": results, "cells": cells},
        passed=passed,
        formats=("csv", "plotdata"),
        grid_sizes=[list(r.field.grid.counts) for r in results],
    )


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("gl3d", parents=[parent], help="magnetic-periodic 3D sample and per-cell statistics")
    parser.add_argument("--b", type=float, nargs="+", required=True)
    parser.add_argument("--n-quanta", type=int, default=4, help="flux quanta through the cross-section")
    parser.add_argument("--L", type=float, default=None, help="height of the box (default: R)")
    parser.add_argument("--grid", type=int, nargs=3, default=None, metavar=("N1", "N2", "N3"))
    parser.add_argument("--divisions", type=int, nargs=3, default=[2, 2, 2], metavar=("D1", "D2", "D3"))
    parser.add_argument("--offset", type=float, nargs=3, default=None, metavar=("S1", "S2", "S3"))
    parser.set_defaults(handler=run_gl3d)
