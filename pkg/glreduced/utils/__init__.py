"""
Logging, caching, sweep scheduling and report emission
"""

from .cache import ResultCache, cache_key
from .formatter import FORMATS, plot_series, render, to_rows, write_report
from .log import setup_logging
from .sweep import run_tasks

__all__ = [
    "FORMATS",
    "ResultCache",
    "cache_key",
    "plot_series",
    "render",
    "run_tasks",
    "setup_logging",
    "to_rows",
    "write_report",
]
