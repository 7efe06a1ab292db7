"""Exact closeness/eccentricity indices, their discriminative variants and graph aggregates.

Every index is one shortest-path sweep per vertex. Per-pair terms have the
form ``f(d) * g(sigma)`` and are reduced per source (sum for the closeness
family, max for eccentricity), then normalised by ``1/(n-1)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from discrimnet.graph import Graph
from discrimnet.parallel import map_sources
from discrimnet.sssp import UnreachablePolicy, Workspace

TermFn = Callable[[np.ndarray], np.ndarray]


class IndexKind(str, enum.Enum):
    CLOSENESS = "closeness"
    DISCRIMINATIVE_CLOSENESS = "discriminative_closeness"
    HARMONIC_CLOSENESS = "harmonic_closeness"
    DISCRIMINATIVE_HARMONIC_CLOSENESS = "discriminative_harmonic_closeness"
    ECCENTRICITY = "eccentricity"
    DISCRIMINATIVE_ECCENTRICITY = "discriminative_eccentricity"
    GENERALIZED = "generalized"


# short names accepted on the command line
KIND_ALIASES = {
    "c": IndexKind.CLOSENESS,
    "dc": IndexKind.DISCRIMINATIVE_CLOSENESS,
    "hc": IndexKind.HARMONIC_CLOSENESS,
    "dhc": IndexKind.DISCRIMINATIVE_HARMONIC_CLOSENESS,
    "e": IndexKind.ECCENTRICITY,
    "de": IndexKind.DISCRIMINATIVE_ECCENTRICITY,
}


def _identity(x: np.ndarray) -> np.ndarray:
    return x


def _reciprocal(x: np.ndarray) -> np.ndarray:
    return 1.0 / x


def _one(x: np.ndarray) -> float:
    return 1.0


def _same(x: np.ndarray) -> np.ndarray:
    return x


# kind -> (f on distance, g on path count, reduce with max?)
TERM_FORMS: dict[IndexKind, tuple[TermFn, Callable, bool]] = {
    IndexKind.CLOSENESS: (_identity, _one, False),
    IndexKind.DISCRIMINATIVE_CLOSENESS: (_identity, _reciprocal, False),
    IndexKind.HARMONIC_CLOSENESS: (_reciprocal, _one, False),
    IndexKind.DISCRIMINATIVE_HARMONIC_CLOSENESS: (_reciprocal, _same, False),
    IndexKind.ECCENTRICITY: (_identity, _one, True),
    IndexKind.DISCRIMINATIVE_ECCENTRICITY: (_identity, _reciprocal, True),
}

_HARMONIC = {IndexKind.HARMONIC_CLOSENESS, IndexKind.DISCRIMINATIVE_HARMONIC_CLOSENESS}


def default_policy(kind: IndexKind | str) -> UnreachablePolicy:
    kind = IndexKind(kind)
    if kind in _HARMONIC:
        return UnreachablePolicy.HARMONIC_ZERO
    return UnreachablePolicy.SUBSTITUTE_N


@dataclass(frozen=True)
class IndexVector:
    kind: IndexKind
    scores: np.ndarray
    policy: UnreachablePolicy
    normalized: bool = True

    def __len__(self) -> int:
        return len(self.scores)


@dataclass(frozen=True)
class GraphAggregates:
    """Graph-level values. Averages are normalised, diameter/radius are not."""

    apl: float
    adpl: float
    ae: float
    ade: float
    diameter: float
    discriminative_diameter: float
    radius: float
    discriminative_radius: float

    def as_dict(self) -> dict[str, float]:
        return dict(self.__dict__)


def _check_size(g: Graph) -> None:
    if g.n < 2:
        raise ValueError(f"indices need at least 2 vertices, graph has {g.n}")


def pair_terms(
    dist: np.ndarray,
    sigma: np.ndarray,
    source: int,
    f: TermFn,
    g_fn: Callable,
    policy: UnreachablePolicy,
) -> np.ndarray:
    """``f(d) * g(sigma)`` for every target other than ``source``.

    Unreachable targets become ``d = n, sigma = 1`` or contribute 0, per
    ``policy``.
    """
    n = len(dist)
    d = np.concatenate((dist[:source], dist[source + 1 :]))
    s = np.concatenate((sigma[:source], sigma[source + 1 :]))
    reach = np.isfinite(d)
    if reach.all():
        return np.broadcast_to(f(d) * g_fn(s), d.shape)
    if policy is UnreachablePolicy.SUBSTITUTE_N:
        d = np.where(reach, d, float(n))
        s = np.where(reach, s, 1.0)
        return np.broadcast_to(f(d) * g_fn(s), d.shape)
    out = np.zeros(n - 1)
    out[reach] = f(d[reach]) * g_fn(s[reach])
    return out


def _sweep_scores(
    g: Graph,
    f: TermFn,
    g_fn: Callable,
    use_max: bool,
    policy: UnreachablePolicy,
    threads: int | None,
) -> np.ndarray:
    def per_source(ws: Workspace, v: int) -> float:
        dist, sigma = ws.run(v)
        terms = pair_terms(dist, sigma, v, f, g_fn, policy)
        if not np.all(np.isfinite(terms)):
            raise ValueError(f"non-finite term for source {v}")
        return float(terms.max() if use_max else terms.sum())

    raw = np.array(map_sources(g, range(g.n), per_source, threads), dtype=np.float64)
    return raw / (g.n - 1)


def compute_index(
    g: Graph,
    kind: IndexKind | str,
    policy: UnreachablePolicy | str | None = None,
    normalized: bool = True,
    threads: int | None = None,
) -> IndexVector:
    """Per-vertex scores of one index.

    ``closeness`` is the mean distance to the other vertices, the
    ``discriminative_*`` kinds divide each distance by its shortest-path count,
    the harmonic kinds average ``1/d`` (``sigma/d``) and the eccentricity
    kinds take the maximum instead of the mean. All carry the ``1/(n-1)``
    factor unless ``normalized`` is false.

    Raises:
        ValueError: fewer than two vertices, or ``kind`` is ``generalized``.
    """
    kind = IndexKind(KIND_ALIASES.get(kind, kind) if isinstance(kind, str) else kind)
    if kind is IndexKind.GENERALIZED:
        raise ValueError("use compute_generalized_closeness for the generalized index")
    _check_size(g)
    policy = default_policy(kind) if policy is None else UnreachablePolicy(policy)
    f, g_fn, use_max = TERM_FORMS[kind]
    scores = _sweep_scores(g, f, g_fn, use_max, policy, threads)
    if not normalized:
        scores = scores * (g.n - 1)
    return IndexVector(kind, scores, policy, normalized)


def compute_generalized_closeness(
    g: Graph,
    f: TermFn,
    g_fn: Callable,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
    normalized: bool = True,
    threads: int | None = None,
) -> IndexVector:
    """Mean of ``f(d(v, u)) * g_fn(sigma(v, u))`` over ``u != v``.

    ``f`` and ``g_fn`` receive numpy arrays and must work elementwise.
    ``f=d, g_fn=1`` gives closeness; ``f=d, g_fn=1/sigma`` gives discriminative
    closeness; ``f=alpha**d, g_fn=sigma`` gives a shortest-path-only Katz score.

    Raises:
        ValueError: if any term is not finite.
    """
    _check_size(g)
    policy = UnreachablePolicy(policy)
    scores = _sweep_scores(g, f, g_fn, False, policy, threads)
    if not normalized:
        scores = scores * (g.n - 1)
    return IndexVector(IndexKind.GENERALIZED, scores, policy, normalized)


@dataclass(frozen=True)
class VertexProfiles:
    """Closeness, discriminative closeness and raw eccentricities for every vertex."""

    closeness: np.ndarray
    discriminative_closeness: np.ndarray
    eccentricity: np.ndarray
    discriminative_eccentricity: np.ndarray


def vertex_profiles(
    g: Graph,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
    threads: int | None = None,
) -> VertexProfiles:
    """Unnormalised sums and maxima of ``d`` and ``d/sigma`` from one sweep."""
    _check_size(g)
    policy = UnreachablePolicy(policy)
    f_c, g_c, _ = TERM_FORMS[IndexKind.CLOSENESS]
    f_dc, g_dc, _ = TERM_FORMS[IndexKind.DISCRIMINATIVE_CLOSENESS]

    def per_source(ws: Workspace, v: int) -> tuple[float, float, float, float]:
        dist, sigma = ws.run(v)
        plain = pair_terms(dist, sigma, v, f_c, g_c, policy)
        disc = pair_terms(dist, sigma, v, f_dc, g_dc, policy)
        return float(plain.sum()), float(disc.sum()), float(plain.max()), float(disc.max())

    rows = np.array(map_sources(g, range(g.n), per_source, threads), dtype=np.float64)
    return VertexProfiles(rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3])


def compute_aggregates(
    g: Graph,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
    threads: int | None = None,
) -> GraphAggregates:
    """APL, ADPL, AE, ADE and the (discriminative) diameter and radius."""
    p = vertex_profiles(g, policy, threads)
    n = g.n
    return GraphAggregates(
        apl=float(np.sum(p.closeness / (n - 1)) / n),
        adpl=float(np.sum(p.discriminative_closeness / (n - 1)) / n),
        ae=float(np.sum(p.eccentricity / (n - 1)) / n),
        ade=float(np.sum(p.discriminative_eccentricity / (n - 1)) / n),
        diameter=float(p.eccentricity.max()),
        discriminative_diameter=float(p.discriminative_eccentricity.max()),
        radius=float(p.eccentricity.min()),
        discriminative_radius=float(p.discriminative_eccentricity.min()),
    )


def center_periphery(
    g: Graph,
    discriminative: bool = False,
    policy: UnreachablePolicy | str = UnreachablePolicy.SUBSTITUTE_N,
    threads: int | None = None,
) -> tuple[list[int], list[int]]:
    """Vertices of minimum and of maximum (discriminative) eccentricity, sorted."""
    kind = IndexKind.DISCRIMINATIVE_ECCENTRICITY if discriminative else IndexKind.ECCENTRICITY
    ecc = compute_index(g, kind, policy, threads=threads).scores
    center = np.flatnonzero(ecc == ecc.min()).tolist()
    periphery = np.flatnonzero(ecc == ecc.max()).tolist()
    return center, periphery


def _round_significant(x: float, digits: int) -> float:
    if x == 0 or not np.isfinite(x):
        return float(x)
    return float(f"{x:.{digits - 1}e}")


def discriminability(scores: IndexVector | np.ndarray, rounding_digits: int = 9) -> float:
    """Percentage of vertices whose score is distinct from every other score.

    Scores are rounded to ``rounding_digits`` significant digits first so
    floating-point noise does not create spurious distinct values.
    """
    values = scores.scores if isinstance(scores, IndexVector) else np.asarray(scores, dtype=float)
    if len(values) == 0:
        raise ValueError("discriminability of an empty score vector")
    if rounding_digits < 1:
        raise ValueError("rounding_digits must be >= 1")
    distinct = {_round_significant(float(x), rounding_digits) for x in values}
    return 100.0 * len(distinct) / len(values)
