"""Edge-list ingestion and the immutable CSR graph used by every other module."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

COMMENT_PREFIXES = ("#", "%")


class EdgeListError(ValueError):
    """Raised when an edge-list file cannot be turned into a graph."""

    def __init__(self, message: str, lineno: int | None = None) -> None:
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def label_sort_key(label: str) -> tuple[int, int | str]:
    # integer labels sort numerically and ahead of any non-integer label
    try:
        return (0, int(label))
    except ValueError:
        return (1, label)


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph in compressed-sparse-row form.

    ``neighbors[offsets[v]:offsets[v + 1]]`` lists the neighbours of ``v`` in
    ascending order. Every edge is stored twice, once per endpoint. ``labels[v]``
    is the label the vertex had in the input.
    """

    offsets: np.ndarray
    neighbors: np.ndarray
    weights: np.ndarray | None = None
    labels: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    @property
    def m(self) -> int:
        return len(self.neighbors) // 2

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def adjacent(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v] : self.offsets[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adjacent(u)
        i = int(np.searchsorted(row, v))
        return i < len(row) and int(row[i]) == v

    def edge_weight(self, u: int, v: int) -> float:
        row = self.adjacent(u)
        i = int(np.searchsorted(row, v))
        if i >= len(row) or int(row[i]) != v:
            raise KeyError((u, v))
        if self.weights is None:
            return 1.0
        return float(self.weights[self.offsets[u] + i])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield each edge once as ``(u, v, w)`` with ``u < v``, in CSR order."""
        for u in range(self.n):
            lo, hi = int(self.offsets[u]), int(self.offsets[u + 1])
            for i in range(lo, hi):
                v = int(self.neighbors[i])
                if u < v:
                    w = 1.0 if self.weights is None else float(self.weights[i])
                    yield u, v, w

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def same_as(self, other: Graph) -> bool:
        """Structural and label equality."""
        if self.weighted != other.weighted:
            return False
        if not (
            np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
        ):
            return False
        if self.weighted and not np.array_equal(self.weights, other.weights):
            return False
        return tuple(self.labels) == tuple(other.labels)


def from_edges(
    n: int,
    edges: Iterable[tuple[int, int]] | Iterable[tuple[int, int, float]],
    weighted: bool = False,
    labels: Sequence[str] | None = None,
) -> Graph:
    """Build a simple graph on vertices ``0..n-1``.

    Self-loops are dropped, direction is ignored and parallel edges collapse
    into one edge that keeps the minimum weight.

    Raises:
        ValueError: on an out-of-range endpoint or a non-positive weight.
    """
    best: dict[tuple[int, int], float] = {}
    for e in edges:
        u, v = int(e[0]), int(e[1])
        w = float(e[2]) if weighted else 1.0  # type: ignore[misc]
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) outside vertex range [0, {n})")
        if weighted and not w > 0:
            raise ValueError(f"non-positive weight {w} on edge ({u}, {v})")
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        old = best.get(key)
        if old is None or w < old:
            best[key] = w

    deg = np.zeros(n + 1, dtype=np.int64)
    for u, v in best:
        deg[u + 1] += 1
        deg[v + 1] += 1
    offsets = np.cumsum(deg)
    neighbors = np.empty(2 * len(best), dtype=np.int64)
    weights = np.empty(2 * len(best), dtype=np.float64) if weighted else None
    fill = offsets[:-1].copy()
    for (u, v), w in sorted(best.items()):
        # lexicographic (u, v) order with u < v fills every row in ascending order
        neighbors[fill[u]] = v
        neighbors[fill[v]] = u
        if weights is not None:
            weights[fill[u]] = w
            weights[fill[v]] = w
        fill[u] += 1
        fill[v] += 1

    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    return Graph(offsets=offsets, neighbors=neighbors, weights=weights, labels=tuple(labels))


def _split_fields(line: str) -> list[str] | None:
    stripped = line.strip()
    if not stripped or stripped.startswith(COMMENT_PREFIXES):
        return None
    return stripped.split()


def load_edge_list(path: str | os.PathLike, weighted: bool = False) -> Graph:
    """Read a whitespace-separated edge list (SNAP/KONECT style).

    Each data line is ``u v`` or ``u v w``. Labels are mapped to dense ids in
    label order (integers numerically, before any non-integer label). Lines
    whose endpoints coincide are discarded before any vertex is created.

    Raises:
        EdgeListError: malformed line, non-positive weight or no edges at all.
    """
    raw: list[tuple[str, str, float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = _split_fields(line)
            if fields is None:
                continue
            if len(fields) < 2:
                raise EdgeListError(f"expected at least 2 fields, got {len(fields)}", lineno)
            w = 1.0
            if weighted:
                if len(fields) < 3:
                    raise EdgeListError("missing weight column", lineno)
                try:
                    w = float(fields[2])
                except ValueError:
                    raise EdgeListError(f"bad weight {fields[2]!r}", lineno) from None
                if not w > 0 or not np.isfinite(w):
                    raise EdgeListError(f"non-positive weight {fields[2]}", lineno)
            if fields[0] == fields[1]:
                continue
            raw.append((fields[0], fields[1], w))
    if not raw:
        raise EdgeListError(f"{os.fspath(path)}: empty graph")

    labels = sorted({x for u, v, _ in raw for x in (u, v)}, key=label_sort_key)
    index = {lab: i for i, lab in enumerate(labels)}
    return from_edges(
        len(labels),
        ((index[u], index[v], w) for u, v, w in raw),
        weighted=weighted,
        labels=labels,
    )


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    """Write ``g`` as an edge list with original labels; reloads to the same graph."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, w in g.edges():
            if g.weighted:
                fh.write(f"{g.label(u)} {g.label(v)} {w!r}\n")
            else:
                fh.write(f"{g.label(u)} {g.label(v)}\n")


def write_label_map(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in range(g.n):
            fh.write(f"{v}\t{g.label(v)}\n")


def connected_components(g: Graph) -> np.ndarray:
    """Component index per vertex; components are numbered by their smallest vertex."""
    comp = np.full(g.n, -1, dtype=np.int64)
    offsets, neighbors = g.offsets, g.neighbors
    c = 0
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            a = stack.pop()
            for b in neighbors[offsets[a] : offsets[a + 1]]:
                if comp[b] < 0:
                    comp[b] = c
                    stack.append(int(b))
        c += 1
    return comp


def induced_subgraph(g: Graph, keep: np.ndarray) -> Graph:
    """Subgraph induced by the sorted vertex ids ``keep``, relabelled densely in order."""
    keep = np.asarray(keep, dtype=np.int64)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    edges = [
        (int(remap[u]), int(remap[v]), w)
        for u, v, w in g.edges()
        if remap[u] >= 0 and remap[v] >= 0
    ]
    return from_edges(
        len(keep), edges, weighted=g.weighted, labels=[g.label(int(v)) for v in keep]
    )


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component.

    Equal-size components are resolved in favour of the one holding the
    smallest vertex id, which is also the smallest original label.
    """
    if g.n == 0:
        return g
    comp = connected_components(g)
    sizes = np.bincount(comp)
    # argmax returns the first maximum; components are numbered by min vertex
    best = int(np.argmax(sizes))
    if sizes[best] == g.n:
        return g
    return induced_subgraph(g, np.flatnonzero(comp == best))


@dataclass(frozen=True)
class TemporalEdge:
    u: str
    v: str
    timestamp: int
    position: int


@dataclass(frozen=True)
class TemporalEdgeList:
    """Timestamped edges in input order; self-loops already removed."""

    entries: tuple[TemporalEdge, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[TemporalEdge]:
        return iter(self.entries)

    def sorted(self) -> list[TemporalEdge]:
        """Entries ordered by ``(timestamp, input position)``."""
        return sorted(self.entries, key=lambda e: (e.timestamp, e.position))

    @classmethod
    def from_tuples(cls, rows: Iterable[tuple[object, object, int]]) -> TemporalEdgeList:
        out = []
        for u, v, t in rows:
            if str(u) != str(v):
                out.append(TemporalEdge(str(u), str(v), int(t), len(out)))
        return cls(tuple(out))


def load_temporal_edge_list(path: str | os.PathLike) -> TemporalEdgeList:
    """Read ``u v t`` lines. Extra trailing columns are ignored.

    Duplicated pairs are kept, only self-loops are dropped.
    """
    out: list[TemporalEdge] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = _split_fields(line)
            if fields is None:
                continue
            if len(fields) < 3:
                raise EdgeListError(f"expected 'u v t', got {len(fields)} fields", lineno)
            try:
                t = int(fields[2])
            except ValueError:
                raise EdgeListError(f"timestamp {fields[2]!r} is not an integer", lineno) from None
            if fields[0] == fields[1]:
                continue
            out.append(TemporalEdge(fields[0], fields[1], t, len(out)))
    return TemporalEdgeList(tuple(out))
