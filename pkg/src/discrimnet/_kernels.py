"""Compiled single-source kernels. Callers own and reuse the scratch arrays."""

from __future__ import annotations

import heapq

import numpy as np
from numba import njit

# equal-length tolerance for weighted path sums
TIE_TOL = 1e-12


@njit(nogil=True, cache=True)
def bfs_count(offsets, neighbors, source, dist, sigma, queue):
    """Breadth-first distances and shortest-path counts.

    ``dist`` and ``sigma`` are overwritten: unreachable vertices end with
    ``dist = inf`` and ``sigma = 0``. Returns the number of reached vertices.
    """
    n = len(offsets) - 1
    for i in range(n):
        dist[i] = np.inf
        sigma[i] = 0.0
    dist[source] = 0.0
    sigma[source] = 1.0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        a = queue[head]
        head += 1
        da = dist[a] + 1.0
        for i in range(offsets[a], offsets[a + 1]):
            b = neighbors[i]
            if dist[b] == np.inf:
                dist[b] = da
                queue[tail] = b
                tail += 1
            if dist[b] == da:
                sigma[b] += sigma[a]
    return tail


@njit(nogil=True, cache=True)
def dijkstra_count(offsets, neighbors, weights, source, dist, sigma, done):
    """Dijkstra distances and shortest-path counts for positive weights.

    Two path lengths within ``TIE_TOL`` of each other count as equal.
    """
    n = len(offsets) - 1
    for i in range(n):
        dist[i] = np.inf
        sigma[i] = 0.0
        done[i] = False
    dist[source] = 0.0
    sigma[source] = 1.0
    heap = [(0.0, source)]
    reached = 0
    while len(heap) > 0:
        da, a = heapq.heappop(heap)
        if done[a] or da > dist[a]:
            continue
        done[a] = True
        reached += 1
        for i in range(offsets[a], offsets[a + 1]):
            b = neighbors[i]
            if done[b]:
                continue
            nd = da + weights[i]
            if nd < dist[b] - TIE_TOL:
                dist[b] = nd
                sigma[b] = sigma[a]
                heapq.heappush(heap, (nd, b))
            elif abs(nd - dist[b]) <= TIE_TOL:
                sigma[b] += sigma[a]
    return reached
