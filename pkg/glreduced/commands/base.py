"""
Shared plumbing for subcommands: the session handed to every handler,
the outcome a handler returns, and cached parallel solving.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..checks.context import SolveContext
from ..config import Settings
from ..schemas import MinResult, SolverConfig, Spectrum
from ..utils.cache import ResultCache
from ..utils.sweep import run_tasks

logger = logging.getLogger(__name__)


@dataclass
class Session:
    settings: Settings
    cache: ResultCache
    cache_check: bool = False
    # results that differed between the cache and a fresh solve
    cache_mismatches: List[str] = field(default_factory=list)

    @property
    def cfg(self) -> SolverConfig:
        return self.settings.solver

    def context(self, **kwargs) -> SolveContext:
        return SolveContext(cfg=self.cfg, cache=self.cache if self.settings.use_cache else None, **kwargs)


@dataclass
class CommandOutcome:
    """What a handler produced.

    groups maps an artifact name to the results written under it; each
    group becomes one file per requested format.
    """

    groups: Dict[str, List[Any]]
    passed: bool = True
    formats: Tuple[str, ...] = ("csv",)
    grid_sizes: List[List[int]] = field(default_factory=list)


def solve_params(cfg: SolverConfig, **params) -> Dict[str, Any]:
    """Cache parameters; the layout matches SolveContext so both share entries"""
    return {**params, "cfg": cfg.model_dump(mode="json")}


def same_result(first, second) -> bool:
    """Bitwise equality of two MinResults or Spectra"""
    if first.model_dump_json() != second.model_dump_json():
        return False
    if isinstance(first, MinResult):
        return np.array_equal(first.field.values, second.field.values)
    if isinstance(first, Spectrum) and first.vectors is not None:
        return second.vectors is not None and np.array_equal(first.vectors, second.vectors)
    return True


def solve_cached(
    session: Session,
    kind: str,
    tasks: Sequence[Dict[str, Any]],
    result_type: type,
    worker: Callable[[Dict[str, Any]], Any],
) -> List[Any]:
    """Serve tasks from the cache and solve the rest on the worker pool.

    Results come back in task order; only this process writes cache entries.
    With cache_check every task is also solved fresh and compared bitwise.
    """
    cache = session.cache if session.settings.use_cache else None
    results: List[Optional[Any]] = [cache.lookup(kind, task, result_type) if cache else None for task in tasks]
    missing = [i for i, value in enumerate(results) if value is None]
    if cache:
        cache.misses += len(missing)
    if missing:
        logger.info("%s: solving %d of %d parameter points", kind, len(missing), len(tasks))
        computed = run_tasks(worker, [tasks[i] for i in missing], session.settings.jobs)
        for i, value in zip(missing, computed):
            results[i] = value
            if cache:
                cache.store(kind, tasks[i], value)

    if session.cache_check:
        fresh = run_tasks(worker, list(tasks), session.settings.jobs)
        for task, cached, recomputed in zip(tasks, results, fresh):
            if not same_result(cached, recomputed):
                label = f"{kind} {({k: v for k, v in task.items() if k != 'cfg'})}"
                logger.error("cache check failed for %s", label)
                session.cache_mismatches.append(label)
    return results
