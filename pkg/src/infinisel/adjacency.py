"""Feature adjacency matrices for the three graph-energy selector variants.

Each builder turns a measure cache into a dense symmetric matrix of
pairwise feature energies: a convex mix (weighted by ``alpha``) of a
relevance term and a redundancy term. Diagonal entries are computed by the
same formula as off-diagonal ones, so a feature's perfect rank correlation
with itself zeroes the redundancy term there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import MeasureCache

VARIANTS = ("ifs", "mifs", "sifs")


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Symmetric nonnegative matrix of pairwise feature energies."""

    a: np.ndarray
    variant: str
    alpha: float

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("adjacency entries must be finite")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be exactly symmetric")
        if a.min() < -1e-9:
            raise ValueError("adjacency entries must be nonnegative")
        if a.min() < 0:
            a = np.clip(a, 0.0, None)  # absorb float-accumulation dust
        object.__setattr__(self, "a", a)

    @property
    def m(self) -> int:
        return self.a.shape[0]

    def to_csv(self, path: str) -> None:
        """Dump the matrix row-major at full precision, for debugging."""
        with open(path, "w") as fh:
            for row in self.a:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return alpha


def _pairwise_max(v: np.ndarray) -> np.ndarray:
    return np.maximum.outer(v, v)


def _pairwise_min(v: np.ndarray) -> np.ndarray:
    return np.minimum.outer(v, v)


def _finish(a: np.ndarray, variant: str, alpha: float, zero_diagonal: bool) -> AdjacencyMatrix:
    if zero_diagonal:
        np.fill_diagonal(a, 0.0)
    return AdjacencyMatrix(a, variant, alpha)


def build_ifs(cache: MeasureCache, alpha: float, zero_diagonal: bool = False) -> AdjacencyMatrix:
    """Dispersion relevance plus rank-correlation redundancy.

    Entry (i, j) is ``alpha * max(std_i, std_j)
    + (1 - alpha) * (1 - |spearman_ij|)``. By default the diagonal follows
    the same formula (self rank correlation zeroes the redundancy term);
    ``zero_diagonal`` drops self-loops entirely instead.
    """
    alpha = _check_alpha(alpha)
    if cache.spearman is None:
        raise ValueError("ifs adjacency needs the spearman block")
    a = alpha * _pairwise_max(cache.std) + (1.0 - alpha) * (1.0 - np.abs(cache.spearman))
    return _finish(a, "ifs", alpha, zero_diagonal)


def build_mifs(cache: MeasureCache, alpha: float, zero_diagonal: bool = False) -> AdjacencyMatrix:
    """Dispersion relevance plus mutual-information redundancy.

    Entry (i, j) is ``alpha * max(std_i, std_j)
    + (1 - alpha) * (1 - min(rdn_i, rdn_j))``.
    """
    alpha = _check_alpha(alpha)
    if cache.rdn is None:
        raise ValueError("mifs adjacency needs the rdn block")
    a = alpha * _pairwise_max(cache.std) + (1.0 - alpha) * (1.0 - _pairwise_min(cache.rdn))
    return _finish(a, "mifs", alpha, zero_diagonal)


def build_sifs(cache: MeasureCache, alpha: float, zero_diagonal: bool = False) -> AdjacencyMatrix:
    """Label relevance plus rank-correlation redundancy.

    Entry (i, j) is ``alpha * max(rel_i, rel_j)
    + (1 - alpha) * (1 - |spearman_ij|)`` where ``rel`` is the normalized
    mutual information between a feature and the labels.
    """
    alpha = _check_alpha(alpha)
    if cache.relevance is None:
        raise ValueError("sifs adjacency needs the relevance block (labeled data)")
    if cache.spearman is None:
        raise ValueError("sifs adjacency needs the spearman block")
    a = alpha * _pairwise_max(cache.relevance) + (1.0 - alpha) * (1.0 - np.abs(cache.spearman))
    return _finish(a, "sifs", alpha, zero_diagonal)


_BUILDERS = {"ifs": build_ifs, "mifs": build_mifs, "sifs": build_sifs}


def build_adjacency(
    cache: MeasureCache, variant: str, alpha: float, zero_diagonal: bool = False
) -> AdjacencyMatrix:
    """Dispatch to the builder for ``variant``."""
    try:
        builder = _BUILDERS[variant]
    except KeyError:
        raise ValueError(f"unknown adjacency variant {variant!r}; expected one of {VARIANTS}") from None
    return builder(cache, alpha, zero_diagonal)
