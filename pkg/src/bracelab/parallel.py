"""Worker-count policy and deterministic chunked scans."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TypeVar

T = TypeVar("T")


def worker_count() -> int:
    """Number of scan workers; ``BRACELAB_THREADS`` caps it (0 or unset = auto)."""
    raw = os.environ.get("BRACELAB_THREADS", "0").strip() or "0"
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        value = os.cpu_count() or 1
    return max(1, value)


def chunk_bounds(total: int, size: int) -> list[tuple[int, int]]:
    size = max(1, size)
    return [(lo, min(total, lo + size)) for lo in range(0, total, size)]


def first_hit(
    scan: Callable[[int, int], Optional[T]], total: int, chunk: int, workers: Optional[int] = None
) -> Optional[T]:
    """Run ``scan(lo, hi)`` over consecutive chunks and return the earliest non-None hit.

    Chunks are dispatched in waves of ``workers``; the first wave containing a hit
    stops the scan. Because hits are taken in chunk order, the result does not
    depend on the worker count.
    """
    bounds = chunk_bounds(total, chunk)
    workers = workers or worker_count()
    if workers == 1 or len(bounds) == 1:
        for lo, hi in bounds:
            hit = scan(lo, hi)
            if hit is not None:
                return hit
        return None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(bounds), workers):
            wave = bounds[start:start + workers]
            for hit in pool.map(lambda b: scan(*b), wave):
                if hit is not None:
                    return hit
    return None
