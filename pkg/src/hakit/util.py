"""Small shared helpers."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_cap() -> int:
    """Parallelism cap from HAKIT_THREADS (>= 1)."""
    try:
        n = int(os.environ.get("HAKIT_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def pmap(fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
    """Map over independent work items, parallel up to the HAKIT_THREADS cap.

    Everything touched by `fn` must be immutable or thread-local; all
    callers map over per-degree constructions of read-only data.
    """
    n = min(thread_cap(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def strides_of(shape: Sequence[int]) -> List[int]:
    out = [1] * len(shape)
    for i in range(len(shape) - 2, -1, -1):
        out[i] = out[i + 1] * shape[i + 1]
    return out
