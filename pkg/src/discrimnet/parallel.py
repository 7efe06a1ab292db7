"""Worker pool for per-source sweeps.

Results always come back in source order, so anything reduced from them is
independent of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

from discrimnet.graph import Graph
from discrimnet.sssp import Workspace, workspace_for

THREADS_ENV = "DISCRIMNET_THREADS"

T = TypeVar("T")


def resolve_threads(threads: int | None = None) -> int:
    """Explicit value, else ``$DISCRIMNET_THREADS``, else the CPU count."""
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise ValueError(f"{THREADS_ENV}={env!r} is not an integer") from None
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"thread count must be >= 1, got {threads}")
    return threads


def map_sources(
    g: Graph,
    sources: Sequence[int],
    fn: Callable[[Workspace, int], T],
    threads: int | None = None,
) -> list[T]:
    """Apply ``fn(workspace, source)`` to every source, preserving order.

    Each worker thread owns one workspace; the compiled kernels release the
    GIL so sweeps overlap.
    """
    threads = resolve_threads(threads)
    if threads == 1 or len(sources) < 2:
        ws = workspace_for(g)
        return [fn(ws, int(s)) for s in sources]

    def task(s: int) -> T:
        return fn(workspace_for(g), int(s))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, sources))
