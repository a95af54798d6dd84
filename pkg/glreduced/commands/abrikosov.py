"""
Abrikosov subcommands: c(R) per flux count and the E_Ab estimate
"""

import argparse

from ..abrikosov import minimize_cR
from ..field.grid import periodic_counts
from .base import CommandOutcome, Session


def run_abrikosov(args: argparse.Namespace, session: Session) -> CommandOutcome:
    ctx = session.context()
    results = []
    for n in args.n_quanta:
        counts = args.grid or periodic_counts(n)
        results.append(minimize_cR(n, counts, session.cfg, restarts=args.starts, basis=ctx.lll(n, counts)))
    passed = all(r.converged for r in results) or not session.cfg.strict
    return CommandOutcome(
        groups={"abrikosov": results},
        passed=passed,
        formats=("csv", "plotdata"),
        grid_sizes=[[args.grid or periodic_counts(n)] * 2 for n in args.n_quanta],
    )


def run_eab(args: argparse.Namespace, session: Session) -> CommandOutcome:
    ctx = session.context(abrikosov_quanta=sorted(args.n_quanta))
    estimate = ctx.eab(cross_check=args.cross_check)
    return CommandOutcome(
        groups={"eab": [estimate]},
        formats=("csv", "json", "plotdata"),
        grid_sizes=[[periodic_counts(n)] * 2 for n in sorted(args.n_quanta)],
    )


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("abrikosov", parents=[parent], help="c(R): Abrikosov energy over the lowest Landau level")
    parser.add_argument("--n-quanta", type=int, nargs="+", required=True)
    parser.add_argument("--grid", type=int, default=None, help="sites per axis (default: flux rule)")
    parser.add_argument("--starts", type=int, default=16, help="random starts per n")
    parser.set_defaults(handler=run_abrikosov)

    parser = subparsers.add_parser("eab", parents=[parent], help="E_Ab from c(R)/R^2 along increasing n")
    parser.add_argument("--n-quanta", type=int, nargs="+", default=[1, 2, 3, 4, 5, 6])
    parser.add_argument("--cross-check", action="store_true", help="also fit g(b) / (1 - b)^2 near b = 1")
    parser.set_defaults(handler=run_eab)
