"""
Spectral subcommands: spectrum2d, spectrum3d and the lowest-Landau-level basis
"""

import argparse
from typing import Any, Dict

from ..field.grid import periodic_counts, quantized_flux, side_for_quanta
from ..schemas import Spectrum
from ..spectral import lll_basis, spectrum2d, spectrum3d
from .base import CommandOutcome, Session, solve_cached, solve_params


def spectrum2d_task(task: Dict[str, Any]) -> Spectrum:
    return spectrum2d(task["R"], task["counts"], task["k"], seed=task["seed"])


def spectrum3d_task(task: Dict[str, Any]) -> Spectrum:
    return spectrum3d(task["R"], task["L"], task["counts"], task["k"], seed=task["seed"])


def _side(args: argparse.Namespace) -> float:
    if args.R is not None:
        return args.R
    return side_for_quanta(args.n_quanta)


def _counts(args: argparse.Namespace) -> int:
    if args.grid is not None:
        return args.grid
    if args.n_quanta is None:
        raise ValueError("--grid is required when the side is given with --R")
    return periodic_counts(args.n_quanta)


def run_spectrum2d(args: argparse.Namespace, session: Session) -> CommandOutcome:
    counts = _counts(args)
    task = solve_params(session.cfg, R=_side(args), counts=counts, k=args.k, seed=session.cfg.seed)
    spectrum = solve_cached(session, "spectrum2d", [task], Spectrum, spectrum2d_task)[0]
    return CommandOutcome(groups={"spectrum2d": [spectrum]}, formats=("csv", "json"), grid_sizes=[[counts, counts]])


def run_spectrum3d(args: argparse.Namespace, session: Session) -> CommandOutcome:
    R = _side(args)
    counts = _counts(args)
    L = args.L if args.L is not None else R
    task = solve_params(session.cfg, R=R, L=L, counts=counts, k=args.k, seed=session.cfg.seed)
    spectrum = solve_cached(session, "spectrum3d", [task], Spectrum, spectrum3d_task)[0]
    return CommandOutcome(groups={"spectrum3d": [spectrum]}, formats=("csv", "json"), grid_sizes=[[counts, counts]])


def run_lll(args: argparse.Namespace, session: Session) -> CommandOutcome:
    R = _side(args)
    counts = _counts(args)
    n = quantized_flux(R, R)
    task = solve_params(session.cfg, R=R, counts=counts, k=n + 2, seed=session.cfg.seed)
    spectrum = solve_cached(session, "spectrum2d", [task], Spectrum, spectrum2d_task)[0]
    basis = lll_basis(R, counts, cluster_tol=args.cluster_tol, seed=session.cfg.seed, spectrum=spectrum)
    return CommandOutcome(groups={"lll": [basis]}, formats=("csv", "json"), grid_sizes=[[counts, counts]])


def _add_geometry(parser: argparse.ArgumentParser) -> None:
    side = parser.add_mutually_exclusive_group(required=True)
    side.add_argument("--n-quanta", type=int, default=None, help="flux quanta n; the side is sqrt(2 pi n)")
    side.add_argument("--R", type=float, default=None, help="side length (R^2 / 2pi must be an integer)")
    parser.add_argument("--grid", type=int, default=None, help="sites per axis of the cross-section")


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("spectrum2d", parents=[parent], help="lowest eigenvalues of the 2D Landau operator")
    _add_geometry(parser)
    parser.add_argument("--k", type=int, default=None, help="number of eigenvalues")
    parser.set_defaults(handler=run_spectrum2d)

    parser = subparsers.add_parser("spectrum3d", parents=[parent], help="lowest eigenvalues of the 3D operator by separation")
    _add_geometry(parser)
    parser.add_argument("--L", type=float, default=None, help="height of the box (default: R)")
    parser.add_argument("--k", type=int, default=None)
    parser.set_defaults(handler=run_spectrum3d)

    parser = subparsers.add_parser("lll", parents=[parent], help="orthonormal basis of the lowest Landau level")
    _add_geometry(parser)
    parser.add_argument("--cluster-tol", type=float, default=0.1)
    parser.set_defaults(handler=run_lll)
