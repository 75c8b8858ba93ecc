"""Energy scoring and feature ranking on an adjacency matrix.

A feature's energy aggregates the weights of all walks leaving it, over all
path lengths at once: with ``r`` chosen strictly inside the convergence
region (``r * spectral_radius < 1``) the infinite sum collapses to
``((I - rA)^-1 - I) @ 1``, which is evaluated here as a single linear solve.
A truncated path-sum of the same quantity is kept alongside as a slow,
independent cross-check.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .adjacency import AdjacencyMatrix, build_adjacency
from .config import SelectorConfig
from .dataset import Dataset, preprocess
from .errors import ConfigError
from .measures import build_measure_cache


@dataclass(frozen=True)
class FeatureRanking:
    """A full ranking of features by descending energy score.

    ``order`` lists feature indices best-first; exact score ties are broken
    by ascending feature index. ``scores`` is indexed by feature, not rank.
    """

    order: np.ndarray
    scores: np.ndarray
    r_used: float
    spectral_radius: float

    def __post_init__(self):
        object.__setattr__(self, "order", np.asarray(self.order, dtype=np.int64))
        object.__setattr__(self, "scores", np.asarray(self.scores, dtype=np.float64))


def _as_matrix(a) -> np.ndarray:
    if isinstance(a, AdjacencyMatrix):
        return a.a
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def spectral_radius(a, tol: float = 1e-10, max_iter: int = 10000) -> float:
    """Largest eigenvalue magnitude of a symmetric nonnegative matrix.

    Power iteration from the all-ones vector, which cannot be orthogonal to
    the dominant eigenvector of a nonnegative matrix. Returns 0 for the
    zero matrix so callers can short-circuit. Raises RuntimeError if the
    estimate has not stabilized to relative tolerance ``tol`` within
    ``max_iter`` iterations.
    """
    a = _as_matrix(a)
    m = a.shape[0]
    if m == 1:
        return abs(float(a[0, 0]))
    if not a.any():
        return 0.0
    v = np.full(m, 1.0 / np.sqrt(m))
    estimate = 0.0
    for _ in range(max_iter):
        w = a @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        if abs(norm - estimate) <= tol * norm:
            return norm
        estimate = norm
    raise RuntimeError(
        f"power iteration did not converge within {max_iter} iterations (last estimate {estimate})"
    )


def ranking_order(scores: np.ndarray) -> np.ndarray:
    """Indices sorted by descending score, ties broken by ascending index."""
    return np.argsort(-np.asarray(scores), kind="stable").astype(np.int64)


def energy_scores(a, c: float = 0.9) -> FeatureRanking:
    """Rank features by the closed-form all-lengths walk energy.

    Sets ``r = c / spectral_radius`` and solves ``(I - rA) y = 1``; the
    score vector is ``y - 1``. A zero matrix (every feature constant)
    yields all-zero scores and the identity ordering, with a warning.
    """
    a = _as_matrix(a)
    if not 0.0 < c < 1.0:
        raise ValueError(f"regularization fraction c must be in (0, 1), got {c}")
    m = a.shape[0]
    rho = spectral_radius(a)
    if rho == 0.0:
        warnings.warn("zero adjacency matrix: all energy scores are 0, ranking by index")
        return FeatureRanking(np.arange(m), np.zeros(m), 0.0, 0.0)
    lo = float(a.min())
    if lo > 0.0 and lo == float(a.max()):
        # Exactly constant matrix (e.g. standardized data with a pure
        # relevance mix): rank one, so the solve reduces to the scalar
        # geometric series and every feature scores c / (1 - c) exactly.
        rho = lo * m
        return FeatureRanking(np.arange(m), np.full(m, c / (1.0 - c)), c / rho, rho)
    r = c / rho
    try:
        y = np.linalg.solve(np.eye(m) - r * a, np.ones(m))
    except np.linalg.LinAlgError as exc:  # cannot happen while r*rho < 1
        raise RuntimeError(f"energy score system is singular: {exc}") from None
    scores = y - 1.0
    return FeatureRanking(ranking_order(scores), scores, r, rho)


def truncated_energy_scores(a, r: float, max_len: int) -> np.ndarray:
    """Partial walk-energy sums up to paths of length ``max_len``.

    Evaluates ``sum_{l=1..max_len} r^l A^l @ 1`` by repeated matrix-vector
    products. Slow but independent of the linear-solve path; used to verify
    ``energy_scores``.
    """
    a = _as_matrix(a)
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    p = np.ones(a.shape[0])
    acc = np.zeros(a.shape[0])
    for _ in range(max_len):
        p = r * (a @ p)
        acc += p
    return acc


def truncation_length(c: float, tol: float = 1e-10) -> int:
    """Path length at which the geometric tail drops below ``tol``."""
    return int(np.ceil(np.log(tol * (1.0 - c)) / np.log(c)))


_CACHE_NEEDS = {
    "ifs": dict(need_spearman=True),
    "mifs": dict(need_mi_matrix=True),
    "sifs": dict(need_spearman=True, need_relevance=True),
}


def measure_cache_for(dataset: Dataset, config: SelectorConfig):
    """The measure blocks a graph variant needs, on preprocessed data.

    Split out of rank_features because the cache is independent of alpha
    and c: hyperparameter sweeps can reuse one cache per dataset.
    """
    if config.variant not in _CACHE_NEEDS:
        raise ConfigError(f"variant {config.variant!r} does not produce a graph-energy ranking")
    if dataset.m < 2:
        raise ConfigError(f"ranking needs at least 2 features, got {dataset.m}")
    if config.variant == "sifs" and dataset.labels is None:
        raise ConfigError("sifs requires a labeled dataset")
    prepared = preprocess(dataset, config.resolved_preprocessing)
    return build_measure_cache(prepared, config.binning, **_CACHE_NEEDS[config.variant])


def rank_from_cache(cache, config: SelectorConfig) -> FeatureRanking:
    """Adjacency construction plus energy scoring from ready-made measures."""
    adjacency = build_adjacency(cache, config.variant, config.fixed_alpha)
    return energy_scores(adjacency, config.c)


def rank_features(dataset: Dataset, config: SelectorConfig) -> FeatureRanking:
    """Full pipeline for the graph-energy variants: preprocess, measure,
    build the adjacency matrix, and score.

    Deterministic for fixed inputs. Requires at least 2 features; the sifs
    variant additionally requires labels.
    """
    return rank_from_cache(measure_cache_for(dataset, config), config)


def selection_order(dataset: Dataset, config: SelectorConfig) -> tuple[np.ndarray, np.ndarray]:
    """Feature ordering for any selector variant, including the greedy
    mutual-information baseline.

    Returns ``(order, scores_by_rank)`` where ``scores_by_rank[p]`` is the
    score attached to the feature at rank position ``p``: the energy score
    for graph variants, the greedy objective value for mrmr.
    """
    if config.variant == "mrmr":
        from .mrmr import mrmr_select

        prepared = preprocess(dataset, config.resolved_preprocessing)
        selection = mrmr_select(prepared, dataset.m, config.binning)
        return np.asarray(selection.order, dtype=np.int64), np.asarray(selection.objective_trace)
    ranking = rank_features(dataset, config)
    return ranking.order, ranking.scores[ranking.order]
