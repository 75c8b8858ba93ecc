"""Benchmark protocol: rank on training data, truncate to top-N feature
sets, train a linear max-margin classifier per N, and report per-N, average,
and maximum test accuracy.

Hyperparameters (the relevance/redundancy trade-off and the classifier
cost) are picked by stratified k-fold cross validation on the training
split only. All preprocessing statistics are likewise fitted on training
data and applied unchanged to validation and test splits, so the test split
can never influence the selection stage.
"""

from __future__ import annotations

import dataclasses
import json
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .config import ALPHA_GRID, COST_GRID, SelectorConfig
from .dataset import Dataset, fit_scaler
from .errors import ConfigError
from .scoring import measure_cache_for, rank_from_cache, selection_order

DEFAULT_N_GRID = (10, 50, 100, 150, 200)
DEFAULT_EPOCHS = 200


@dataclass(frozen=True)
class LinearClassifier:
    """Binary linear max-margin classifier.

    Predicts ``classes[1]`` where the affine score is nonnegative.
    ``objective_history`` records the regularized training objective per
    accepted epoch; it is non-increasing by construction.
    """

    weights: np.ndarray
    bias: float
    cost: float
    classes: np.ndarray
    objective_history: tuple[float, ...] = ()

    def decision_function(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=np.float64) @ self.weights + self.bias

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.where(self.decision_function(x) >= 0.0, self.classes[1], self.classes[0])


def train_linear(
    x: np.ndarray, y: np.ndarray, cost: float, epochs: int = DEFAULT_EPOCHS, seed: int = 0
) -> LinearClassifier:
    """Fit a hinge-loss linear classifier by batch subgradient descent.

    Minimizes ``||w||^2 / (2 cost) + mean hinge``; the mean-loss form makes
    the optimization target invariant under duplicating the training set.
    Step sizes backtrack until the objective decreases, so the recorded
    training loss never increases. Deterministic for fixed inputs; ``seed``
    is accepted for interface stability but the batch solver does not
    consume randomness.
    """
    del seed
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y)
    if x.ndim != 2 or x.shape[0] != y.shape[0]:
        raise ValueError(f"shape mismatch: x {x.shape} vs y {y.shape}")
    classes = np.unique(y)
    if classes.size != 2:
        raise ValueError(f"binary training needs exactly 2 classes, got {classes.size}")
    if cost <= 0:
        raise ValueError(f"cost must be positive, got {cost}")

    t = np.where(y == classes[1], 1.0, -1.0)
    n, k = x.shape
    lam = 1.0 / cost

    def objective(w, b):
        margins = t * (x @ w + b)
        return 0.5 * lam * float(w @ w) + float(np.maximum(0.0, 1.0 - margins).mean())

    w = np.zeros(k)
    b = 0.0
    obj = objective(w, b)
    history = [obj]
    step = 1.0
    for _ in range(epochs):
        margins = t * (x @ w + b)
        active = t * (margins < 1.0)
        gw = lam * w - (active @ x) / n
        gb = -float(active.sum()) / n
        if float(gw @ gw) + gb * gb <= 1e-24:
            break
        step = min(step * 2.0, 1e6)
        accepted = False
        while step > 1e-18:
            w_new = w - step * gw
            b_new = b - step * gb
            obj_new = objective(w_new, b_new)
            if obj_new < obj:
                w, b, obj = w_new, b_new, obj_new
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        history.append(obj)
    return LinearClassifier(w, float(b), float(cost), classes, tuple(history))


@dataclass(frozen=True)
class _OneVsRest:
    models: tuple[LinearClassifier, ...]
    classes: np.ndarray

    def predict(self, x: np.ndarray) -> np.ndarray:
        scores = np.column_stack([m.decision_function(x) for m in self.models])
        return self.classes[np.argmax(scores, axis=1)]


def fit_classifier(x, y, cost, epochs=DEFAULT_EPOCHS, seed=0):
    """Binary classifier, or a one-vs-rest reduction for more classes."""
    classes = np.unique(y)
    if classes.size < 2:
        raise ValueError("training data contains a single class")
    if classes.size == 2:
        return train_linear(x, y, cost, epochs, seed)
    models = tuple(
        train_linear(x, np.where(y == c, 1, 0), cost, epochs, seed) for c in classes
    )
    return _OneVsRest(models, classes)


def accuracy(predictions: np.ndarray, labels: np.ndarray) -> float:
    return float(np.mean(predictions == labels))


def binary_auc(scores: np.ndarray, labels: np.ndarray, positive) -> float:
    """Area under the ROC curve via midrank statistics (binary tasks only)."""
    pos = labels == positive
    n_pos = int(pos.sum())
    n_neg = pos.size - n_pos
    if n_pos == 0 or n_neg == 0:
        return 0.5
    ranks = rankdata(scores)
    return float((ranks[pos].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


def stratified_fold_indices(labels: np.ndarray, folds: int, seed: int) -> np.ndarray:
    """Deterministic stratified fold assignment (one fold id per sample).

    Every class must have at least ``folds`` members so that each fold's
    training part contains every class.
    """
    labels = np.asarray(labels)
    if folds < 2:
        raise ConfigError(f"need at least 2 folds, got {folds}")
    if labels.size < folds:
        raise ConfigError(f"{labels.size} samples cannot fill {folds} folds")
    rng = np.random.default_rng(seed)
    assignment = np.empty(labels.size, dtype=np.int64)
    for cls in np.unique(labels):
        members = np.flatnonzero(labels == cls)
        if members.size < folds:
            raise ConfigError(
                f"class {cls} has {members.size} samples; stratifying into {folds} folds is impossible"
            )
        members = rng.permutation(members)
        assignment[members] = np.arange(members.size) % folds
    return assignment


def _effective_n_grid(n_grid, m) -> tuple[int, ...]:
    out = []
    for n in n_grid:
        n = int(n)
        if n < 1:
            raise ConfigError(f"top-N values must be positive, got {n}")
        out.append(min(n, m))
    return tuple(sorted(set(out)))


def _top_n_accuracy(
    train_values, train_labels, test_values, test_labels, order, n, cost, epochs, seed
) -> tuple[float, float | None]:
    cols = order[:n]
    model = fit_classifier(train_values[:, cols], train_labels, cost, epochs, seed)
    test_x = test_values[:, cols]
    acc = accuracy(model.predict(test_x), test_labels)
    auc = None
    if isinstance(model, LinearClassifier):
        auc = binary_auc(model.decision_function(test_x), test_labels, model.classes[1])
    return acc, auc


def cross_validate(
    dataset: Dataset,
    config_grid,
    folds: int = 5,
    seed: int = 0,
    n_grid=DEFAULT_N_GRID,
    epochs: int = DEFAULT_EPOCHS,
):
    """Pick the best (config, cost) pair by stratified k-fold accuracy.

    Each cell ranks features on the fold's training part, then averages
    validation accuracy over the top-N grid. Ties are broken toward the
    smallest alpha, then the smallest cost. Returns the winning pair and
    the per-entry mean CV accuracy, aligned with ``config_grid``.
    """
    if dataset.labels is None:
        raise ConfigError("cross validation requires a labeled dataset")
    config_grid = list(config_grid)
    if not config_grid:
        raise ConfigError("empty configuration grid")
    assignment = stratified_fold_indices(dataset.labels, folds, seed)
    n_eval = _effective_n_grid(n_grid, dataset.m)

    # Rankings do not depend on the classifier cost, and the measure cache
    # is further independent of alpha and c, so group grid entries twice:
    # one cache per (variant, preprocessing, binning), one ranking per
    # config.
    positions_by_config: dict[SelectorConfig, list[int]] = {}
    for pos, (config, _) in enumerate(config_grid):
        positions_by_config.setdefault(config, []).append(pos)
    cache_groups: dict[tuple, list[SelectorConfig]] = {}
    for config in positions_by_config:
        key = (config.variant, config.resolved_preprocessing, config.binning)
        cache_groups.setdefault(key, []).append(config)

    scores = np.zeros(len(config_grid))
    for fold in range(folds):
        train_mask = assignment != fold
        train_ds = Dataset(
            dataset.values[train_mask], dataset.labels[train_mask], dataset.feature_names
        )
        val_values_raw = dataset.values[~train_mask]
        val_labels = dataset.labels[~train_mask]
        for (variant, scheme, _), group in cache_groups.items():
            scaler = fit_scaler(train_ds.values, scheme)
            scaled_train = train_ds.with_values(scaler.apply(train_ds.values))
            val_values = scaler.apply(val_values_raw)
            cache = None
            if variant != "mrmr":
                cache = measure_cache_for(
                    scaled_train, dataclasses.replace(group[0], preprocessing="none")
                )
            for config in group:
                if variant == "mrmr":
                    order, _ = selection_order(
                        scaled_train, dataclasses.replace(config, preprocessing="none")
                    )
                else:
                    order = rank_from_cache(cache, config).order
                for pos in positions_by_config[config]:
                    cost = config_grid[pos][1]
                    accs = [
                        _top_n_accuracy(
                            scaled_train.values, train_ds.labels, val_values, val_labels,
                            order, n, cost, epochs, seed,
                        )[0]
                        for n in n_eval
                    ]
                    scores[pos] += float(np.mean(accs))
    scores /= folds

    def sort_key(pos):
        config, cost = config_grid[pos]
        alpha = config.alpha if isinstance(config.alpha, float) else -1.0
        return (-scores[pos], alpha, cost)

    best = min(range(len(config_grid)), key=sort_key)
    return config_grid[best], scores


@dataclass(frozen=True)
class EvalReport:
    """Per-N accuracies with their average and maximum, plus the
    hyperparameters the run settled on."""

    variant: str
    chosen_alpha: float
    chosen_classifier_cost: float
    fold_seed: int
    n_requested: tuple[int, ...]
    n_evaluated: tuple[int, ...]
    per_n_accuracy: dict[int, float]
    avg: float
    max: float
    per_n_auc: dict[int, float] | None = None

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "chosen_alpha": self.chosen_alpha,
            "chosen_classifier_cost": self.chosen_classifier_cost,
            "fold_seed": self.fold_seed,
            "n_requested": list(self.n_requested),
            "n_evaluated": list(self.n_evaluated),
            "per_n_accuracy": {str(k): v for k, v in self.per_n_accuracy.items()},
            "per_n_auc": None
            if self.per_n_auc is None
            else {str(k): v for k, v in self.per_n_auc.items()},
            "avg": self.avg,
            "max": self.max,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [
            f"variant={self.variant}",
            f"chosen_alpha={self.chosen_alpha!r}",
            f"chosen_classifier_cost={self.chosen_classifier_cost!r}",
            f"fold_seed={self.fold_seed}",
            "n_requested=" + ",".join(str(n) for n in self.n_requested),
            "n_evaluated=" + ",".join(str(n) for n in self.n_evaluated),
        ]
        for n in self.n_evaluated:
            lines.append(f"accuracy_n{n}={self.per_n_accuracy[n]!r}")
        if self.per_n_auc is not None:
            for n in self.n_evaluated:
                lines.append(f"auc_n{n}={self.per_n_auc[n]!r}")
        lines.append(f"avg={self.avg!r}")
        lines.append(f"max={self.max!r}")
        return "\n".join(lines) + "\n"


def evaluate_selector(
    d_train: Dataset,
    d_test: Dataset,
    config: SelectorConfig,
    n_grid=DEFAULT_N_GRID,
    seed: int = 0,
    folds: int = 5,
    cost_grid=COST_GRID,
    default_cost: float = 1.0,
    epochs: int = DEFAULT_EPOCHS,
    return_ranking: bool = False,
):
    """Run the full train/test protocol for one selector configuration.

    Ranks features on the training split only; when ``config.alpha`` is
    ``"cv"``, the trade-off and classifier cost are first chosen by
    stratified cross validation on the training split (over ``cost_grid``,
    which may be a single value). Top-N values larger than the feature
    count are clipped, with a warning, and recorded in the report.
    """
    if d_train.labels is None or d_test.labels is None:
        raise ConfigError("evaluation requires labeled train and test splits")
    if d_train.m != d_test.m:
        raise ConfigError(
            f"train and test have different feature counts ({d_train.m} vs {d_test.m})"
        )

    if isinstance(config.alpha, str):  # "cv"
        # The greedy baseline has no trade-off parameter to tune.
        alphas = ALPHA_GRID if config.variant != "mrmr" else (0.0,)
        grid = [
            (config.with_alpha(a), cost) for a in alphas for cost in cost_grid
        ]
        (chosen_config, chosen_cost), _ = cross_validate(
            d_train, grid, folds, seed, n_grid, epochs
        )
    else:
        chosen_config = config
        chosen_cost = default_cost

    scaler = fit_scaler(d_train.values, chosen_config.resolved_preprocessing)
    train_ds = d_train.with_values(scaler.apply(d_train.values))
    order, rank_scores = selection_order(
        train_ds, dataclasses.replace(chosen_config, preprocessing="none")
    )
    test_values = scaler.apply(d_test.values)

    n_eval = _effective_n_grid(n_grid, d_train.m)
    if any(int(n) > d_train.m for n in n_grid):
        warnings.warn(
            f"top-N values above the feature count were clipped to m={d_train.m}"
        )

    per_n_accuracy: dict[int, float] = {}
    per_n_auc: dict[int, float] = {}
    binary = np.unique(d_train.labels).size == 2
    for n in n_eval:
        acc, auc = _top_n_accuracy(
            train_ds.values, d_train.labels, test_values, d_test.labels,
            order, n, chosen_cost, epochs, seed,
        )
        per_n_accuracy[n] = acc
        if binary and auc is not None:
            per_n_auc[n] = auc

    values = [per_n_accuracy[n] for n in n_eval]
    report = EvalReport(
        variant=chosen_config.variant,
        chosen_alpha=chosen_config.fixed_alpha,
        chosen_classifier_cost=float(chosen_cost),
        fold_seed=seed,
        n_requested=tuple(int(n) for n in n_grid),
        n_evaluated=n_eval,
        per_n_accuracy=per_n_accuracy,
        avg=float(np.mean(values)),
        max=float(np.max(values)),
        per_n_auc=per_n_auc if binary else None,
    )
    if return_ranking:
        return report, (order, rank_scores)
    return report
