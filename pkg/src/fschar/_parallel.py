"""Process-pool helper shared by the character computations."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], tasks: Iterable[T], jobs: int) -> list[R]:
    """Map ``fn`` over ``tasks``; results come back in task order regardless of scheduling."""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


def chunked(items: list[T], n: int) -> list[list[T]]:
    """Split into ``n`` interleaved chunks (round robin keeps the work roughly balanced)."""
    n = max(1, n)
    return [items[i::n] for i in range(n) if items[i::n]]
