"""Temporal link prediction: LIDIN, -SPL and Adamic/Adar rankings with AUC and Q.

LIDIN ranks an unconnected pair ahead of another if it is closer, or equally
close but joined by more shortest paths (smaller ``d / sigma``).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from discrimnet.graph import Graph, TemporalEdgeList, label_sort_key, from_edges
from discrimnet.parallel import map_sources
from discrimnet.sssp import Workspace

logger = logging.getLogger(__name__)

DEFAULT_RATIOS = (0.6, 0.7, 0.8, 0.9)
DEFAULT_CANDIDATE_CAP = 50_000_000
# Adamic/Adar sums are rounded so equal degree multisets compare equal
AA_DECIMALS = 12


class Method(str, enum.Enum):
    LIDIN = "lidin"
    NEGSPL = "negspl"
    AA = "aa"


METHOD_ORDER = (Method.LIDIN, Method.NEGSPL, Method.AA)


class NoNegativePairsError(ValueError):
    pass


@dataclass(frozen=True)
class SplitSpec:
    ratio: float
    edge_cap: int | None = None

    def __post_init__(self) -> None:
        if not 0 < self.ratio < 1:
            raise ValueError(f"training ratio must lie in (0, 1), got {self.ratio}")
        if self.edge_cap is not None and self.edge_cap < 1:
            raise ValueError(f"edge cap must be >= 1, got {self.edge_cap}")


@dataclass(frozen=True)
class TrainTestSplit:
    """Training graph and the unconnected pairs that gain an edge afterwards.

    ``test_pairs`` holds dense ids ``(u, v)`` with ``u < v``, sorted.
    ``test_edge_count`` counts every test-interval edge event before any
    filtering.
    """

    train_graph: Graph
    test_pairs: tuple[tuple[int, int], ...]
    test_edge_count: int
    train_edge_count: int

    @property
    def default_nt(self) -> int:
        return max(1, math.ceil(self.test_edge_count / 10))


def training_size(count: int, ratio: float) -> int:
    # rounding guards products such as 0.7 * 10 = 7.000000000000001
    return math.ceil(round(ratio * count, 9))


def temporal_split(edges: TemporalEdgeList, spec: SplitSpec) -> TrainTestSplit:
    """Split timestamp-ordered edges into a training graph and test pairs.

    Ties in timestamp keep input order. The first ``ceil(ratio * count)``
    edges (after the optional prefix cap) train; a later edge yields a test
    pair when both endpoints occur in training and are not already adjacent.

    Raises:
        ValueError: empty input or empty training graph.
    """
    ordered = edges.sorted()
    if spec.edge_cap is not None:
        ordered = ordered[: spec.edge_cap]
    if not ordered:
        raise ValueError("temporal edge list is empty")
    k = training_size(len(ordered), spec.ratio)
    train, test = ordered[:k], ordered[k:]
    if not train:
        raise ValueError("training interval holds no edges")

    labels = sorted({x for e in train for x in (e.u, e.v)}, key=label_sort_key)
    index = {lab: i for i, lab in enumerate(labels)}
    g = from_edges(len(labels), ((index[e.u], index[e.v]) for e in train), labels=labels)
    if g.m == 0:
        raise ValueError("training graph has no edges")

    pairs = set()
    for e in test:
        a, b = index.get(e.u), index.get(e.v)
        if a is None or b is None:
            continue
        if a > b:
            a, b = b, a
        if not g.has_edge(a, b):
            pairs.add((a, b))
    return TrainTestSplit(g, tuple(sorted(pairs)), len(test), len(train))


@dataclass(frozen=True)
class CandidateTable:
    """Every non-adjacent pair ``u < v`` of the training graph, in ``(u, v)`` order.

    Pairs without a connecting path carry ``d = n`` and ``sigma = 1``.
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    dist: np.ndarray
    sigma: np.ndarray
    aa: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.u)

    @property
    def dd(self) -> np.ndarray:
        return self.dist / self.sigma

    def codes(self) -> np.ndarray:
        return self.u * self.n + self.v

    def locate(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Row index of each pair; pairs must be present and ordered ``u < v``."""
        codes = np.asarray(u, dtype=np.int64) * self.n + np.asarray(v, dtype=np.int64)
        idx = np.searchsorted(self.codes(), codes)
        if np.any(idx >= len(self)) or np.any(self.codes()[np.minimum(idx, len(self) - 1)] != codes):
            raise KeyError("pair is not a candidate (adjacent or out of range)")
        return idx


def build_candidates(
    g: Graph,
    with_aa: bool = True,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
    threads: int | None = None,
) -> CandidateTable:
    """Distances, path counts and Adamic/Adar sums for all unconnected pairs.

    Raises:
        ValueError: when the number of candidates exceeds ``candidate_cap``.
    """
    n = g.n
    total = n * (n - 1) // 2 - g.m
    if total > candidate_cap:
        raise ValueError(
            f"{total} candidate pairs exceed the cap of {candidate_cap}; "
            "use an edge cap or raise the candidate cap"
        )
    degrees = g.degrees()
    # a degree-1 vertex only closes a walk back to its own neighbour, never a
    # candidate pair, so its placeholder 0 is never summed into a key
    inv_log = np.where(degrees > 1, 1.0 / np.log(np.maximum(degrees, 2)), 0.0)
    offsets, neighbors = g.offsets, g.neighbors

    def per_source(ws: Workspace, u: int):
        dist, sigma = ws.run(u)
        keep = np.zeros(n, dtype=bool)
        keep[u + 1 :] = True
        keep[g.adjacent(u)] = False
        vs = np.flatnonzero(keep)
        d = dist[vs]
        s = sigma[vs]
        unreachable = ~np.isfinite(d)
        d = np.where(unreachable, float(n), d)
        s = np.where(unreachable, 1.0, s)
        aa = None
        if with_aa:
            nbrs = g.adjacent(u)
            if len(nbrs):
                # every two-step walk u-w-x adds 1/ln deg(w) to x
                starts, ends = offsets[nbrs], offsets[nbrs + 1]
                targets = np.concatenate([neighbors[a:b] for a, b in zip(starts, ends)])
                contrib = np.repeat(inv_log[nbrs], ends - starts)
                acc = np.bincount(targets, weights=contrib, minlength=n)
            else:
                acc = np.zeros(n)
            aa = np.round(acc[vs], AA_DECIMALS)
        return vs, d, s, aa

    parts = map_sources(g, range(n), per_source, threads)
    us = np.concatenate([np.full(len(p[0]), i, dtype=np.int64) for i, p in enumerate(parts)])
    return CandidateTable(
        n=n,
        u=us,
        v=np.concatenate([p[0] for p in parts]).astype(np.int64),
        dist=np.concatenate([p[1] for p in parts]),
        sigma=np.concatenate([p[2] for p in parts]),
        aa=np.concatenate([p[3] for p in parts]) if with_aa else None,
    )


@dataclass(frozen=True)
class ScoredPairList:
    """Candidates ordered best-first; ``order`` maps rank position to table row.

    ``key`` rows hold the method's sort key per table row: ``(d, dd)`` for
    LIDIN, ``(d,)`` for -SPL (both smaller is better) and ``(aa,)`` for AA
    (larger is better).
    """

    method: Method
    table: CandidateTable
    key: np.ndarray
    order: np.ndarray
    rank_of_row: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.order)

    @property
    def higher_is_better(self) -> bool:
        return self.method is Method.AA

    def entries(self) -> Iterable[tuple[int, int, tuple[float, ...]]]:
        for row in self.order:
            yield int(self.table.u[row]), int(self.table.v[row]), tuple(self.key[row].tolist())

    def ranks(self, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
        """1-based ranks of ``(u, v)`` pairs with ``u < v``."""
        if not pairs:
            return np.zeros(0, dtype=np.int64)
        arr = np.asarray(pairs, dtype=np.int64)
        return self.rank_of_row[self.table.locate(arr[:, 0], arr[:, 1])] + 1


def method_key(table: CandidateTable, method: Method | str) -> np.ndarray:
    method = Method(method)
    if method is Method.LIDIN:
        return np.column_stack((table.dist, table.dd))
    if method is Method.NEGSPL:
        return table.dist[:, None].copy()
    if table.aa is None:
        raise ValueError("candidate table was built without Adamic/Adar sums")
    return table.aa[:, None].copy()


def score_pairs(
    split: TrainTestSplit | Graph,
    method: Method | str,
    table: CandidateTable | None = None,
    threads: int | None = None,
) -> ScoredPairList:
    """Rank every unconnected training pair by ``method``; ties go to smaller endpoints."""
    method = Method(method)
    g = split.train_graph if isinstance(split, TrainTestSplit) else split
    if g.n == 0:
        raise ValueError("training graph is empty")
    if table is None:
        table = build_candidates(g, with_aa=method is Method.AA, threads=threads)
    key = method_key(table, method)
    sign = -1.0 if method is Method.AA else 1.0
    # np.lexsort sorts by the last key first
    sort_keys = [table.v, table.u] + [sign * key[:, j] for j in reversed(range(key.shape[1]))]
    order = np.lexsort(sort_keys)
    rank_of_row = np.empty(len(order), dtype=np.int64)
    rank_of_row[order] = np.arange(len(order))
    return ScoredPairList(method, table, key, order, rank_of_row)


def compare_keys(a: np.ndarray, b: np.ndarray, higher_is_better: bool) -> np.ndarray:
    """Row-wise lexicographic comparison: +1 if ``a`` ranks better, 0 on a tie, -1 otherwise."""
    out = np.zeros(len(a), dtype=np.int64)
    undecided = np.ones(len(a), dtype=bool)
    for j in range(a.shape[1]):
        better = a[:, j] > b[:, j] if higher_is_better else a[:, j] < b[:, j]
        worse = a[:, j] < b[:, j] if higher_is_better else a[:, j] > b[:, j]
        out[undecided & better] = 1
        out[undecided & worse] = -1
        undecided &= ~(better | worse)
    return out


def sample_negative_pairs(
    split: TrainTestSplit, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Uniform unconnected, non-test pairs by rejection; rows are ``(u, v)``, ``u < v``."""
    g = split.train_graph
    n = g.n
    available = n * (n - 1) // 2 - g.m - len(split.test_pairs)
    if available <= 0:
        raise NoNegativePairsError("no unconnected pair outside the test set")
    test = {a * n + b for a, b in split.test_pairs}
    out = np.empty((count, 2), dtype=np.int64)
    filled = 0
    while filled < count:
        batch = max(16, 2 * (count - filled))
        a = rng.integers(0, n, size=batch)
        b = rng.integers(0, n, size=batch)
        for x, y in zip(a.tolist(), b.tolist()):
            if x == y:
                continue
            if x > y:
                x, y = y, x
            if x * n + y in test or g.has_edge(x, y):
                continue
            out[filled] = (x, y)
            filled += 1
            if filled == count:
                break
    return out


def auc(
    split: TrainTestSplit,
    scored: ScoredPairList,
    n_t: int | None = None,
    seed: int = 0,
) -> float:
    """``(n_g + 0.5 n_e) / n_t`` over random positive/negative pair draws.

    Each draw takes one test pair and one unconnected non-test pair uniformly
    (with replacement) and compares their keys; equal keys count half.

    Raises:
        ValueError: no test pairs.
        NoNegativePairsError: every unconnected pair is a test pair.
    """
    if not split.test_pairs:
        raise ValueError("no test pairs to evaluate")
    n_t = split.default_nt if n_t is None else n_t
    if n_t < 1:
        raise ValueError(f"n_t must be >= 1, got {n_t}")
    rng = np.random.Generator(np.random.Philox(seed))
    positives = np.asarray(split.test_pairs, dtype=np.int64)[
        rng.integers(0, len(split.test_pairs), size=n_t)
    ]
    negatives = sample_negative_pairs(split, n_t, rng)
    table = scored.table
    pos_key = scored.key[table.locate(positives[:, 0], positives[:, 1])]
    neg_key = scored.key[table.locate(negatives[:, 0], negatives[:, 1])]
    cmp = compare_keys(pos_key, neg_key, scored.higher_is_better)
    n_g = int(np.count_nonzero(cmp > 0))
    n_e = int(np.count_nonzero(cmp == 0))
    return (n_g + 0.5 * n_e) / n_t


def ranking_error(split: TrainTestSplit, scored: ScoredPairList) -> float:
    """Mean 1-based rank of the test pairs in ``scored``; lower is better."""
    if not split.test_pairs:
        raise ValueError("no test pairs to evaluate")
    return float(np.mean(scored.ranks(list(split.test_pairs))))


@dataclass(frozen=True)
class ReportRow:
    ratio: float
    method: Method
    auc: float | None
    q: float | None
    test_pairs: int
    nt: int


def evaluate(
    edges: TemporalEdgeList,
    ratios: Iterable[float] = DEFAULT_RATIOS,
    methods: Iterable[Method | str] = METHOD_ORDER,
    seed: int = 0,
    edge_cap: int | None = None,
    n_t: int | None = None,
    threads: int | None = None,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
) -> list[ReportRow]:
    """AUC and Q for every (ratio, method), ratios ascending, methods in canonical order.

    All methods at one ratio share the same AUC draws. A ratio whose test
    set is empty yields rows with ``auc`` and ``q`` set to ``None``.
    """
    wanted = {Method(m) for m in methods}
    methods = [m for m in METHOD_ORDER if m in wanted]
    rows = []
    for ratio in sorted(set(ratios)):
        split = temporal_split(edges, SplitSpec(ratio, edge_cap))
        nt = split.default_nt if n_t is None else n_t
        if not split.test_pairs:
            logger.warning("ratio %s: no test pairs, AUC and Q left empty", ratio)
            rows.extend(ReportRow(ratio, m, None, None, 0, nt) for m in methods)
            continue
        table = build_candidates(
            split.train_graph,
            with_aa=Method.AA in methods,
            candidate_cap=candidate_cap,
            threads=threads,
        )
        for m in methods:
            scored = score_pairs(split, m, table)
            rows.append(
                ReportRow(
                    ratio=ratio,
                    method=m,
                    auc=auc(split, scored, nt, seed),
                    q=ranking_error(split, scored),
                    test_pairs=len(split.test_pairs),
                    nt=nt,
                )
            )
    return rows
