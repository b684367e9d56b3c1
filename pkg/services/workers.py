"""Shared in-process worker pool.

One ThreadPoolExecutor per process, created lazily under a lock. `map_ordered`
returns results in input order, so callers observe single-threaded output
whatever the pool size. Calls made from inside a pool thread run inline, which
keeps nested fan-out (a search candidate enumerating codewords) deadlock-free.
"""

import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional

from django.conf import settings

logger = logging.getLogger(__name__)


_executor = None
_executor_size = None
_executor_lock = threading.Lock()
_override: Optional[int] = None
_local = threading.local()


def configured_workers() -> int:
    if _override is not None:
        return _override
    value = getattr(settings, "GRL_THREADS", None) or os.cpu_count() or 1
    return max(1, int(value))


def set_max_workers(max_workers: Optional[int]) -> None:
    """Override the pool size for this process (None restores the setting)."""
    global _override
    _override = None if max_workers is None else max(1, int(max_workers))


def _mark_worker():
    _local.in_pool = True


def _get_executor(max_workers: int) -> ThreadPoolExecutor:
    global _executor, _executor_size
    with _executor_lock:
        if _executor is None or _executor_size != max_workers:
            # a retired pool is not shut down: callers still holding it keep
            # submitting, and its threads exit once it is unreferenced
            _executor = ThreadPoolExecutor(
                max_workers=max_workers,
                thread_name_prefix="grl-worker",
                initializer=_mark_worker,
            )
            _executor_size = max_workers
        return _executor


def map_ordered(fn: Callable, items: Iterable) -> List:
    items = list(items)
    workers = configured_workers()
    if workers == 1 or len(items) <= 1 or getattr(_local, "in_pool", False):
        return [fn(item) for item in items]

    executor = _get_executor(workers)
    futures = [executor.submit(fn, item) for item in items]
    results = []
    for future in futures:
        try:
            results.append(future.result())
        except Exception:
            logger.exception("Worker task %s failed", getattr(fn, "__name__", fn))
            for pending in futures:
                pending.cancel()
            raise
    return results
