"""Order-preserving parallel map capped by ``GRAPHBOUNDS_THREADS``."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

THREADS_ENV = "GRAPHBOUNDS_THREADS"


def worker_count(default: int = 1) -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None


def pmap(fn, items, workers: int | None = None, chunksize: int = 1) -> list:
    """``list(map(fn, items))``, spread across processes when ``workers > 1``.

    Results come back in input order, so output never depends on scheduling.
    """
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
