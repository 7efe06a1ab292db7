"""Sampled estimators of ADPL and ADE with a Hoeffding sample-size rule."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from discrimnet.graph import Graph
from discrimnet.indices import TERM_FORMS, IndexKind, pair_terms
from discrimnet.parallel import map_sources
from discrimnet.sssp import UnreachablePolicy, Workspace, workspace_for


class EstimateKind(str, enum.Enum):
    ADPL = "adpl"
    ADE = "ade"


@dataclass(frozen=True)
class EstimateResult:
    estimate: float
    samples_used: int
    seed: int | None
    kind: EstimateKind = EstimateKind.ADPL
    per_sample: np.ndarray | None = None
    sources: np.ndarray | None = None


def _contribution(
    ws: Workspace, v: int, kind: EstimateKind, policy: UnreachablePolicy
) -> float:
    dist, sigma = ws.run(v)
    f, g_fn, _ = TERM_FORMS[IndexKind.DISCRIMINATIVE_CLOSENESS]
    terms = pair_terms(dist, sigma, v, f, g_fn, policy)
    raw = terms.max() if kind is EstimateKind.ADE else terms.sum()
    return float(raw) / (len(dist) - 1)


def per_source_contribution(
    g: Graph,
    v: int,
    kind: EstimateKind | str = EstimateKind.ADPL,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
) -> float:
    """One sample's value: DC(v) for ``adpl``, DE(v) for ``ade``."""
    if g.n < 2:
        raise ValueError("need at least 2 vertices")
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} outside [0, {g.n})")
    return _contribution(workspace_for(g), v, EstimateKind(kind), UnreachablePolicy(policy))


def draw_sources(n: int, samples: int, seed: int) -> np.ndarray:
    """``samples`` independent uniform vertex draws (with replacement).

    Philox is counter based: draw ``t`` depends only on ``(seed, t)``.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    return rng.integers(0, n, size=samples, dtype=np.int64)


def _estimate(
    g: Graph,
    kind: EstimateKind,
    samples: int | None,
    seed: int | None,
    policy: UnreachablePolicy | str,
    exhaustive: bool,
    threads: int | None,
    keep_samples: bool,
) -> EstimateResult:
    if g.n < 2:
        raise ValueError("need at least 2 vertices")
    policy = UnreachablePolicy(policy)
    if exhaustive:
        sources = np.arange(g.n, dtype=np.int64)
        seed = None
    else:
        if samples is None or samples < 1:
            raise ValueError(f"sample count must be >= 1, got {samples}")
        if seed is None:
            seed = 0
        sources = draw_sources(g.n, samples, seed)

    # one sweep per distinct vertex; values are then laid out in draw order
    unique, inverse = np.unique(sources, return_inverse=True)
    values = map_sources(
        g, unique.tolist(), lambda ws, v: _contribution(ws, v, kind, policy), threads
    )
    per_sample = np.asarray(values, dtype=np.float64)[inverse]
    estimate = math.fsum(per_sample.tolist()) / len(per_sample)
    return EstimateResult(
        estimate=estimate,
        samples_used=len(per_sample),
        seed=seed,
        kind=kind,
        per_sample=per_sample if keep_samples else None,
        sources=sources if keep_samples else None,
    )


def estimate_adpl(
    g: Graph,
    samples: int | None = None,
    seed: int | None = 0,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
    exhaustive: bool = False,
    threads: int | None = None,
    keep_samples: bool = True,
) -> EstimateResult:
    """Average discriminative path length from uniformly sampled sources.

    With ``exhaustive=True`` every vertex is swept once and the result is
    the exact ADPL.
    """
    return _estimate(g, EstimateKind.ADPL, samples, seed, policy, exhaustive, threads, keep_samples)


def estimate_ade(
    g: Graph,
    samples: int | None = None,
    seed: int | None = 0,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
    exhaustive: bool = False,
    threads: int | None = None,
    keep_samples: bool = True,
) -> EstimateResult:
    """Average discriminative eccentricity, sampled like :func:`estimate_adpl`."""
    return _estimate(g, EstimateKind.ADE, samples, seed, policy, exhaustive, threads, keep_samples)


def required_sample_size(epsilon: float, delta: float, diameter_bound: float) -> int:
    """Samples needed for additive error ``epsilon`` with failure probability ``delta``.

    ``diameter_bound`` caps every per-sample value: pass the diameter, the
    discriminative diameter, ``log2(n)`` or any known constant.

    >>> required_sample_size(0.1, 0.05, 2.0)
    738
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not diameter_bound > 0:
        raise ValueError(f"diameter_bound must be > 0, got {diameter_bound}")
    return max(1, math.ceil(math.log(2.0 / delta) * diameter_bound**2 / (2.0 * epsilon**2)))


def log_bound(n: int) -> float:
    """Default small-world bound ``log2(n)`` for graphs with unknown diameter."""
    return math.log2(n)


def samples_from_percent(n: int, percent: float) -> int:
    if not 0 < percent <= 100:
        raise ValueError(f"sample percentage must lie in (0, 100], got {percent}")
    return max(1, math.ceil(n * percent / 100.0))
