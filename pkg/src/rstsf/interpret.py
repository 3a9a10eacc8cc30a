"""Interpretability reports over a fitted forest.

Per-feature importance is mean decrease in impurity: for every internal node
the split's information gain weighted by the fraction of training rows that
reach the node, summed per feature and averaged over trees. Group importances
average the member features' MDI per representation or per aggregation, then
normalize. Heatmaps count, per position of one representation, how many nodes
split on an interval covering that position, scaled so the peak is 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ALL_AGGREGATIONS, ALL_REPRESENTATIONS, Aggregation, Representation
from .forest import Forest, used_features
from .representations import representation_width


@dataclass(frozen=True)
class ImportanceReport:
    """All importance outputs for one model.

    repr_importance and agg_importance follow the canonical declaration
    order of the enums and each sum to 1 (all-zero when no tree ever split).
    """

    per_feature_mdi: np.ndarray
    repr_importance: np.ndarray
    agg_importance: np.ndarray
    used_features: tuple[int, ...]


@dataclass(frozen=True)
class Heatmap:
    repr: Representation
    weights: np.ndarray


def mdi(model: Forest) -> np.ndarray:
    """Mean decrease in impurity per pool feature."""
    acc = np.zeros(len(model.pool), dtype=np.float64)
    n = float(model.n_train)
    for tree in model.trees:
        internal = tree.feature >= 0
        np.add.at(
            acc,
            tree.feature[internal],
            (tree.count[internal] / n) * tree.gain[internal],
        )
    return acc / model.n_trees


def group_importance(
    model: Forest,
    group_by: str = "representation",
    filter_repr: Representation | None = None,
) -> np.ndarray:
    """Normalized mean member MDI per representation or per aggregation.

    ``filter_repr`` restricts aggregation grouping to features of one
    representation. Returns the zero vector when no feature in scope was
    ever split on.
    """
    if group_by not in ("representation", "aggregation"):
        raise ValueError(f"unknown grouping {group_by!r}")
    scores = mdi(model)
    if group_by == "representation":
        groups: tuple = ALL_REPRESENTATIONS
        key = lambda feat: feat.repr  # noqa: E731
    else:
        groups = ALL_AGGREGATIONS
        key = lambda feat: feat.agg  # noqa: E731
    values = np.zeros(len(groups), dtype=np.float64)
    for g, group in enumerate(groups):
        members = [
            j
            for j, feat in enumerate(model.pool.features)
            if key(feat) is group and (filter_repr is None or feat.repr is filter_repr)
        ]
        if members:
            values[g] = scores[members].mean()
    total = values.sum()
    if total > 0.0:
        values = values / total
    return values


def interval_heatmap(
    model: Forest,
    repr_id: Representation,
    filter_agg: Aggregation | None = None,
) -> Heatmap:
    """Per-position split coverage for one representation, peak-normalized.

    A feature used in k nodes contributes k to every position its interval
    covers; the result is divided by the maximum count (all zeros when no
    covered split exists).
    """
    width = representation_width(repr_id, model.m, model.lag)
    counts = np.zeros(width, dtype=np.float64)
    for tree in model.trees:
        internal = np.nonzero(tree.feature >= 0)[0]
        for node in internal:
            feat = model.pool.features[tree.feature[node]]
            if feat.repr is not repr_id:
                continue
            if filter_agg is not None and feat.agg is not filter_agg:
                continue
            counts[feat.start : feat.end + 1] += 1.0
    peak = counts.max() if width else 0.0
    weights = counts / peak if peak > 0.0 else counts
    return Heatmap(repr=repr_id, weights=weights)


def importance_report(model: Forest) -> ImportanceReport:
    return ImportanceReport(
        per_feature_mdi=mdi(model),
        repr_importance=group_importance(model, "representation"),
        agg_importance=group_importance(model, "aggregation"),
        used_features=tuple(int(j) for j in used_features(model)),
    )
