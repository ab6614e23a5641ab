"""Optional thread fan-out for the heavier verification loops.

The environment variable HYPERWALK_THREADS caps worker parallelism; the
default is sequential evaluation.  All parallelized loops reduce with a
max over residuals, so results do not depend on scheduling.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("HYPERWALK_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def pmap(fn, items):
    """Map ``fn`` over ``items``, threaded when HYPERWALK_THREADS > 1."""
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
