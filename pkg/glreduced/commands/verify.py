"""
verify: run a named acceptance suite and aggregate its reports
"""

import argparse

from ..checks.registry import SUITE_NAMES, CheckRegistry, VerifyOptions
from .base import CommandOutcome, Session


def run_verify(args: argparse.Namespace, session: Session) -> CommandOutcome:
    options = VerifyOptions()
    updates = {}
    if args.b is not None:
        updates["b_values"] = args.b
    if args.R is not None:
        updates["R_list"] = sorted(args.R)
    if updates:
        options = options.model_copy(update=updates)

    registry = CheckRegistry(session.context(g_radii=options.R_list), options)
    report = registry.run(args.suite)
    return CommandOutcome(groups={f"verify_{args.suite}": [report]}, passed=report.passed, formats=("json", "csv"))


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[parent], help="run an acceptance suite")
    parser.add_argument("--suite", choices=SUITE_NAMES, default="all")
    parser.add_argument("--b", type=float, nargs="+", default=None, help="b values for the lemma checks")
    parser.add_argument("--R", type=float, nargs="+", default=None, help="radii for the lemma checks and g fits")
    parser.set_defaults(handler=run_verify)
