"""Process-pool fan-out with results returned in input order."""

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from .config import config

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

T = TypeVar("T")
R = TypeVar("R")


def fan_out(fn: Callable[[T], R], items: Iterable[T], parallelism: int | None = None) -> list[R]:
    """Apply a picklable function to every item.

    With parallelism 1 (the default from VERGEN_THREADS) the work runs in
    this process.
    """
    work = list(items)
    workers = min(parallelism or config.threads, len(work))
    if workers <= 1:
        return [fn(item) for item in work]
    logger.debug(f"Fanning out {len(work)} tasks to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, work))
