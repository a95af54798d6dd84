"""
Report emission: CSV rows, JSON documents and plot-data series.

CSV columns are fixed per result type and floats are written in their
shortest round-trip form, so identical results give identical bytes.
"""

import json
import logging
import re
from collections import OrderedDict
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import pandas as pd
from pydantic import BaseModel

from ..errors import ReportWriteError
from ..schemas import (
    AbrikosovEstimate,
    AbrikosovResult,
    CellStats,
    GEstimate,
    InequalityReport,
    LLLBasis,
    MinResult,
    Spectrum,
    SweepReport,
)

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "plotdata")

MIN_RESULT_COLUMNS = [
    "problem", "b", "R", "L", "counts", "seed", "value", "kinetic", "mass", "quartic",
    "residual", "iterations", "converged",
]
G_COLUMNS = ["b", "R", "m0_over_R2", "extrapolated_g", "raw_fit_g", "fitted_C", "error_bar", "monotone"]
SPECTRUM_COLUMNS = ["index", "eigenvalue", "cluster", "component_2d", "longitudinal_mode"]
ABRIKOSOV_COLUMNS = ["n", "R", "value", "value_over_area", "stationarity_defect", "pairing_defect", "value_spread", "converged"]
EAB_COLUMNS = ["n", "R", "c_over_R2", "extrapolated_EAb", "cross_check_EAb"]
CHECK_COLUMNS = ["check", "label", "lhs", "rhs", "slack", "holds", "asserted"]
CELL_COLUMNS = ["lower", "upper", "sites", "volume", "mean_density", "mean_quartic", "energy", "energy_density"]
LLL_COLUMNS = ["index", "eigenvalue", "dimension", "max_eigenvalue_deviation", "next_eigenvalue", "cluster_tol"]

# fitted-constant keys of the form "<series>@<var>=<x>"
SERIES_KEY = re.compile(r"^(?P<series>[^@\[]+)@(?P<var>[A-Za-z_]+)=(?P<x>[-+0-9.eE]+)$")


def format_value(value: Any) -> str:
    """Shortest round-trip text for floats, plain text otherwise"""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _min_result_rows(result: MinResult) -> List[Dict[str, Any]]:
    p = result.provenance
    return [{
        "problem": p.problem, "b": p.b, "R": p.R, "L": p.L, "counts": list(p.counts), "seed": p.seed,
        "value": result.value, "kinetic": result.breakdown.kinetic, "mass": result.breakdown.mass,
        "quartic": result.breakdown.quartic, "residual": result.residual, "iterations": result.iterations,
        "converged": result.converged,
    }]


def _g_rows(estimate: GEstimate) -> List[Dict[str, Any]]:
    return [
        {
            "b": estimate.b, "R": R, "m0_over_R2": value, "extrapolated_g": estimate.extrapolated_g,
            "raw_fit_g": estimate.raw_fit_g, "fitted_C": estimate.fitted_C, "error_bar": estimate.error_bar,
            "monotone": estimate.monotone,
        }
        for R, value in estimate.values
    ]


def _spectrum_rows(spectrum: Spectrum) -> List[Dict[str, Any]]:
    cluster_of = {i: c for c, members in enumerate(spectrum.clusters) for i in members}
    rows = []
    for i, value in enumerate(spectrum.eigenvalues):
        j, m = spectrum.components[i] if spectrum.components else (i, None)
        rows.append({"index": i, "eigenvalue": value, "cluster": cluster_of.get(i), "component_2d": j, "longitudinal_mode": m})
    return rows


def _abrikosov_rows(result: AbrikosovResult) -> List[Dict[str, Any]]:
    return [{column: getattr(result, column) for column in ABRIKOSOV_COLUMNS}]


def _eab_rows(estimate: AbrikosovEstimate) -> List[Dict[str, Any]]:
    return [
        {"n": n, "R": R, "c_over_R2": ratio, "extrapolated_EAb": estimate.extrapolated_EAb, "cross_check_EAb": estimate.cross_check_EAb}
        for n, R, ratio in estimate.sequence
    ]


def _report_rows(report: InequalityReport) -> List[Dict[str, Any]]:
    points = report.points or []
    if not points:
        return [{"check": report.name, "label": "", "lhs": report.lhs, "rhs": report.rhs, "slack": report.slack_used, "holds": report.holds, "asserted": report.asserted}]
    return [
        {"check": report.name, "label": p.label, "lhs": p.lhs, "rhs": p.rhs, "slack": p.slack, "holds": p.holds, "asserted": report.asserted}
        for p in points
    ]


def _cell_rows(stats: CellStats) -> List[Dict[str, Any]]:
    return [
        {
            "lower": list(r.box.lower), "upper": list(r.box.upper), "sites": r.sites, "volume": r.volume,
            "mean_density": r.mean_density, "mean_quartic": r.mean_quartic, "energy": r.energy.total,
            "energy_density": r.energy_density,
        }
        for r in stats.records
    ]



def _lll_rows(basis: LLLBasis) -> List[Dict[str, Any]]:
    return [
        {
            "index": i, "eigenvalue": value, "dimension": basis.dimension,
            "max_eigenvalue_deviation": basis.max_eigenvalue_deviation, "next_eigenvalue": basis.next_eigenvalue,
            "cluster_tol": basis.cluster_tol,
        }
        for i, value in enumerate(basis.eigenvalues)
    ]

ROW_BUILDERS = [
    (MinResult, MIN_RESULT_COLUMNS, _min_result_rows),
    (GEstimate, G_COLUMNS, _g_rows),
    (Spectrum, SPECTRUM_COLUMNS, _spectrum_rows),
    (AbrikosovResult, ABRIKOSOV_COLUMNS, _abrikosov_rows),
    (AbrikosovEstimate, EAB_COLUMNS, _eab_rows),
    (InequalityReport, CHECK_COLUMNS, _report_rows),
    (CellStats, CELL_COLUMNS, _cell_rows),
    (LLLBasis, LLL_COLUMNS, _lll_rows),
]


def _flatten(results: Iterable[Any]) -> List[Any]:
    flat = []
    for item in results:
        if isinstance(item, SweepReport):
            flat.extend(item.reports)
        else:
            flat.append(item)
    return flat


def to_rows(results: Sequence[Any], columns: Sequence[str] = None) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Rows and column order for homogeneous results; `columns` fixes the header of an empty list"""
    results = _flatten(results)
    if not results:
        return list(columns or MIN_RESULT_COLUMNS), []
    for result_type, type_columns, builder in ROW_BUILDERS:
        if isinstance(results[0], result_type):
            rows = []
            for result in results:
                if not isinstance(result, result_type):
                    raise TypeError(f"cannot mix {result_type.__name__} and {type(result).__name__} in one CSV")
                rows.extend(builder(result))
            return list(columns or type_columns), rows
    raise TypeError(f"no CSV layout for {type(results[0]).__name__}")


def plot_series(results: Sequence[Any]) -> "OrderedDict[str, List[Tuple[float, float]]]":
    """(x, y) series per name, in first-appearance order"""
    series: "OrderedDict[str, List[Tuple[float, float]]]" = OrderedDict()

    def add(name: str, x: float, y: float) -> None:
        series.setdefault(name, []).append((float(x), float(y)))

    for result in _flatten(results):
        if isinstance(result, GEstimate):
            for R, value in result.values:
                add(f"m0_over_R2 R={R:g}", result.b, value)
            add("g_hat", result.b, result.extrapolated_g)
        elif isinstance(result, AbrikosovEstimate):
            for n, _, ratio in result.sequence:
                add("cR_over_R2", n, ratio)
            for b, ratio in result.cross_check_points:
                add("g_over_critical_distance", b, ratio)
        elif isinstance(result, AbrikosovResult):
            add("cR_over_R2", result.n, result.value_over_area)
        elif isinstance(result, MinResult):
            p = result.provenance
            add(f"{p.problem}_value b={p.b:g}", p.R, result.value)
        elif isinstance(result, CellStats):
            for i, record in enumerate(result.records):
                add("cell_mean_quartic", i, record.mean_quartic)
                add("cell_energy_density", i, record.energy_density)
        elif isinstance(result, Spectrum):
            for i, value in enumerate(result.eigenvalues):
                add("eigenvalue", i, value)
        elif isinstance(result, InequalityReport):
            for key, value in result.fitted_constants.items():
                match = SERIES_KEY.match(key)
                if match:
                    add(match.group("series"), float(match.group("x")), value)
    return series


def _dump(result: Any) -> Any:
    if isinstance(result, BaseModel):
        return result.model_dump(mode="json")
    return result


def render(results: Sequence[Any], fmt: str, columns: Sequence[str] = None) -> str:
    if fmt == "csv":
        header, rows = to_rows(results, columns)
        frame = pd.DataFrame([{c: format_value(row.get(c)) for c in header} for row in rows], columns=header)
        return frame.to_csv(index=False, lineterminator="\n")
    if fmt == "json":
        payload = [_dump(r) for r in results]
        if len(payload) == 1:
            payload = payload[0]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "plotdata":
        lines = []
        for name, points in plot_series(results).items():
            lines.append(f"# series {name}")
            lines.extend(f"{x!r} {y!r}" for x, y in points)
            lines.append("")
        return "\n".join(lines)
    raise ValueError(f"unknown report format {fmt!r}; expected one of {FORMATS}")


def write_report(results: Sequence[Any], fmt: str, path, columns: Sequence[str] = None) -> Path:
    """Write results as csv, json or plotdata.

    Raises:
        ReportWriteError: the file cannot be written (the path is in the message)
    """
    text = render(list(results), fmt, columns)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ReportWriteError(f"cannot write {fmt} report to {path}: {exc}") from exc
    logger.info("wrote %s", path)
    return path
