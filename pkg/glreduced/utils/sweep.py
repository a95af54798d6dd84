"""
Bounded worker pool for parameter sweeps.
Results come back in the order of the task list whatever the completion order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_tasks(fn: Callable[[T], R], tasks: Sequence[T], jobs: int = 1) -> List[R]:
    """Map fn over tasks with up to `jobs` processes (fn and tasks must be picklable)"""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    workers = min(jobs, len(tasks))
    logger.info("running %d tasks on %d workers", len(tasks), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))
