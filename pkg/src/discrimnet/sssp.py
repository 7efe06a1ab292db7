"""Single-source shortest-path DAG: distances and shortest-path counts."""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass

import numpy as np

from discrimnet._kernels import bfs_count, dijkstra_count
from discrimnet.graph import Graph


class UnreachablePolicy(str, enum.Enum):
    """How a pair with no connecting path enters an index.

    ``SUBSTITUTE_N`` treats the pair as distance ``n`` with one shortest path.
    ``HARMONIC_ZERO`` makes the pair contribute nothing.
    """

    SUBSTITUTE_N = "substitute_n"
    HARMONIC_ZERO = "harmonic_zero"


@dataclass(frozen=True)
class SsspResult:
    """Distances and path counts from one source.

    ``sigma`` is a float64 count: exact up to 2**53, approximate beyond.
    ``sigma[source]`` is reported as 0 and unreachable entries carry
    ``dist = inf``, ``sigma = 0``.
    """

    source: int
    dist: np.ndarray
    sigma: np.ndarray
    reachable: np.ndarray


class Workspace:
    """Scratch buffers for repeated sweeps over one graph by one worker."""

    def __init__(self, g: Graph) -> None:
        self.graph = g
        self.dist = np.empty(g.n, dtype=np.float64)
        self.sigma = np.empty(g.n, dtype=np.float64)
        self.queue = np.empty(max(g.n, 1), dtype=np.int64)
        self.done = np.empty(g.n, dtype=np.bool_)

    def run(self, source: int) -> tuple[np.ndarray, np.ndarray]:
        """Fill and return the internal ``(dist, sigma)`` buffers.

        The buffers are overwritten by the next call; ``sigma[source]`` holds
        the accumulation seed 1 here.
        """
        g = self.graph
        if g.weights is None:
            bfs_count(g.offsets, g.neighbors, source, self.dist, self.sigma, self.queue)
        else:
            dijkstra_count(
                g.offsets, g.neighbors, g.weights, source, self.dist, self.sigma, self.done
            )
        return self.dist, self.sigma


_local = threading.local()


def workspace_for(g: Graph) -> Workspace:
    """Per-thread workspace, rebuilt only when the graph changes."""
    ws = getattr(_local, "ws", None)
    if ws is None or ws.graph is not g:
        ws = Workspace(g)
        _local.ws = ws
    return ws


def shortest_path_dag(g: Graph, source: int, workspace: Workspace | None = None) -> SsspResult:
    """Shortest-path distances and counts from ``source``.

    BFS on unweighted graphs, Dijkstra on weighted ones. Counts follow the
    usual relaxation rule: a strictly shorter route replaces the count, an
    equally short one adds to it.

    Example:
        >>> from discrimnet.graph import from_edges
        >>> r = shortest_path_dag(from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 0)
        >>> r.dist.tolist(), r.sigma.tolist()
        ([0.0, 1.0, 2.0, 1.0], [0.0, 1.0, 2.0, 1.0])
    """
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} outside [0, {g.n})")
    ws = workspace if workspace is not None else workspace_for(g)
    dist, sigma = ws.run(source)
    dist = dist.copy()
    sigma = sigma.copy()
    sigma[source] = 0.0
    return SsspResult(source=source, dist=dist, sigma=sigma, reachable=np.isfinite(dist))


def discriminative_distance(
    d: float,
    sigma: float,
    n: int,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
) -> float:
    """``d / sigma`` for a reachable pair, the policy value otherwise.

    An unreachable pair is one with ``d = inf`` (or ``sigma = 0`` at ``d > 0``).
    """
    policy = UnreachablePolicy(policy)
    if d == 0:
        raise ValueError("discriminative distance is undefined for a vertex and itself")
    if not np.isfinite(d) or sigma == 0:
        return float(n) if policy is UnreachablePolicy.SUBSTITUTE_N else 0.0
    return d / sigma
