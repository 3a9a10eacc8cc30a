"""Evaluation metrics for comparing classifiers across datasets: plain
accuracy, fractional average rank, and difficulty-weighted average accuracy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class AccuracyMatrix:
    """Accuracies in percent: rows are datasets, columns are classifiers."""

    Z: np.ndarray
    dataset_names: tuple[str, ...]
    classifier_names: tuple[str, ...]

    def __post_init__(self) -> None:
        z = np.asarray(self.Z, dtype=np.float64)
        if z.ndim != 2:
            raise ValueError("accuracy matrix must be 2-dimensional")
        if np.any(z < 0.0) or np.any(z > 100.0):
            raise ValueError("accuracies must lie in [0, 100]")
        object.__setattr__(self, "Z", z)


def _as_matrix(Z: AccuracyMatrix | np.ndarray) -> np.ndarray:
    if isinstance(Z, AccuracyMatrix):
        return Z.Z
    return np.asarray(Z, dtype=np.float64)


def accuracy(pred: np.ndarray, truth: np.ndarray) -> float:
    """Percent of positions where pred equals truth."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape != truth.shape or pred.size == 0:
        raise ValueError("length mismatch")
    return 100.0 * float(np.count_nonzero(pred == truth)) / pred.size


def average_rank(Z: AccuracyMatrix | np.ndarray) -> np.ndarray:
    """Mean per-dataset rank of each classifier, 1 = best.

    Ranking is by descending accuracy within each dataset row; tied
    classifiers share the mean of the ranks they span.
    """
    z = _as_matrix(Z)
    n_d, n_c = z.shape
    if n_c < 2:
        raise ValueError("ranking needs at least two classifiers")
    # rank = 1 + (#strictly better) + (#ties excluding self)/2
    better = (z[:, None, :] > z[:, :, None]).sum(axis=2)
    ties = (z[:, None, :] == z[:, :, None]).sum(axis=2) - 1
    ranks = 1.0 + better + 0.5 * ties
    return ranks.mean(axis=0)


def weighted_average_accuracy(Z: AccuracyMatrix | np.ndarray) -> np.ndarray:
    """Difficulty-weighted mean accuracy per classifier.

    Dataset i gets weight w_i = N_d(1 - M_i) / (N_d - sum_k M_k) where M_i
    is the best accuracy on dataset i as a fraction; harder datasets weigh
    more. The weights sum to N_d, so the result is a weighted mean on the
    original percent scale.

    Raises
    ------
    DataError
        When every dataset is solved perfectly by its best classifier, which
        makes the weight denominator zero.
    """
    z = _as_matrix(Z)
    n_d = z.shape[0]
    best = z.max(axis=1) / 100.0
    if np.all(best >= 1.0):
        raise DataError("all datasets perfectly solved; weights undefined")
    weights = n_d * (1.0 - best) / (n_d - best.sum())
    return (weights @ z) / n_d
