"""
report: re-emit a saved SweepReport without recomputation
"""

import argparse
from pathlib import Path

from ..schemas import SweepReport
from .base import CommandOutcome, Session


def run_report(args: argparse.Namespace, session: Session) -> CommandOutcome:
    path = Path(args.input)
    report = SweepReport.model_validate_json(path.read_text(encoding="utf-8"))
    return CommandOutcome(groups={f"report_{path.stem}": [report]}, passed=report.passed, formats=("json", "csv", "plotdata"))


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("report", parents=[parent], help="re-emit a saved SweepReport JSON")
    parser.add_argument("--input", required=True, help="SweepReport JSON written by verify")
    parser.set_defaults(handler=run_report)
