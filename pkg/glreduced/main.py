#!/usr/bin/env python3
"""
glreduced command line
Run with: python -m glreduced <command> [options]

Exit codes: 0 success, 1 failed check or domain error, 2 usage error.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .commands import abrikosov, bulk, minimize, report, spectral, verify
from .commands.base import CommandOutcome, Session
from .config import load_settings
from .errors import GLReducedError
from .schemas import RunManifest
from .utils.cache import ResultCache
from .utils.formatter import FORMATS, write_report
from .utils.log import setup_logging

logger = logging.getLogger("glreduced")

COMMAND_GROUPS = (minimize, spectral, abrikosov, verify, bulk, report)
EXTENSIONS = {"csv": "csv", "json": "json", "plotdata": "dat"}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    solver = parent.add_argument_group("solver")
    solver.add_argument("--seed", type=int, default=None)
    solver.add_argument("--tol", type=float, default=None, help="gradient tolerance")
    solver.add_argument("--max-iter", type=int, default=None)
    solver.add_argument("--restarts", type=int, default=None)
    solver.add_argument("--strict", action="store_true", help="fail on non-converged solves")

    run = parent.add_argument_group("run")
    run.add_argument("--config", default=None, help="JSON settings file")
    run.add_argument("--out", default=None, help="output directory (default: results)")
    run.add_argument("--format", action="append", choices=FORMATS, default=None, help="report format (repeatable)")
    run.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps")
    run.add_argument("--no-cache", action="store_true", help="solve everything fresh")
    run.add_argument("--cache-check", action="store_true", help="compare cached results with fresh solves")
    run.add_argument("--verbose", action="store_true")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glreduced",
        description="Reduced Ginzburg-Landau energies, Landau spectra and their limit checks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parent = _common_options()
    for group in COMMAND_GROUPS:
        group.register(subparsers, parent)
    return parser


def _overrides(args: argparse.Namespace) -> Dict:
    return {
        "output_dir": args.out,
        "jobs": args.jobs,
        "use_cache": False if args.no_cache else None,
        "solver": {
            "seed": args.seed,
            "grad_tolerance": args.tol,
            "max_iterations": args.max_iter,
            "restarts": args.restarts,
            "strict": True if args.strict else None,
        },
    }


def write_outputs(outcome: CommandOutcome, formats: Sequence[str], out_dir: Path) -> List[str]:
    """One file per (group, format); each file has a single writer"""
    written = []
    for group, results in outcome.groups.items():
        for fmt in formats:
            path = write_report(results, fmt, out_dir / f"{group}.{EXTENSIONS[fmt]}")
            written.append(str(path))
    return written


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    setup_logging(args.verbose)
    started = time.perf_counter()
    try:
        settings = load_settings(args.config, _overrides(args))
        session = Session(
            settings=settings,
            cache=ResultCache(settings.cache_dir, enabled=settings.use_cache),
            cache_check=args.cache_check,
        )
        outcome = args.handler(args, session)
        out_dir = Path(settings.output_dir)
        outputs = write_outputs(outcome, args.format or outcome.formats, out_dir)

        manifest = RunManifest(
            command=args.command,
            argv=list(argv) if argv is not None else sys.argv[1:],
            parameters={k: v for k, v in vars(args).items() if k != "handler"},
            seeds=[settings.solver.seed],
            tolerances={"grad_tolerance": settings.solver.grad_tolerance},
            grid_sizes=outcome.grid_sizes,
            version=__version__,
            wall_clock_seconds=time.perf_counter() - started,
            cache_hits=session.cache.hits,
            cache_misses=session.cache.misses,
            outputs=outputs,
        )
        manifest_path = out_dir / f"{args.command}_manifest.json"
        manifest_path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    except GLReducedError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILED
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        logger.error("invalid arguments: %s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_FAILED

    if session.cache_mismatches:
        logger.error("%d cached results differ from fresh solves", len(session.cache_mismatches))
        return EXIT_FAILED
    if not outcome.passed:
        logger.error("%s: asserted checks failed", args.command)
        return EXIT_FAILED
    logger.info("%s done in %.1fs (cache hits %d, misses %d)", args.command, manifest.wall_clock_seconds, session.cache.hits, session.cache.misses)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
