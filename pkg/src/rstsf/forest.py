"""The ensemble of randomized binary trees over the feature pool.

Trees are stored flattened: parallel arrays indexed by node id, preorder from
the root at index 0. Internal nodes carry (pool feature index, cut point,
children, information gain); leaves carry a class label. Every node records
the number of training rows that reached it, which yields the reach fraction
used by the interpretability module.

Split search is vectorized across the candidate features of a node: class
counts for every candidate partition come from one boolean-mask matmul
against the one-hot label matrix, so per-node cost stays in numpy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SplitMode, TrainConfig
from .dataset import LabeledDataset
from .errors import DataError
from .features import FeaturePool, build_feature_pool, evaluate_pool, feature_column
from .representations import build_representation_set

_TREE_SEED_DOMAIN = 2


def _derived_rng(seed: int, domain: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, domain, index])))


def entropy(y: np.ndarray) -> float:
    """Shannon entropy of a label vector, base 2, with 0*log(0) = 0."""
    y = np.asarray(y)
    if y.size == 0:
        raise ValueError("entropy of empty label vector")
    counts = np.bincount(y)
    return float(_entropy_from_counts(counts[None, :].astype(np.float64))[0])


def information_gain(y: np.ndarray, y_left: np.ndarray, y_right: np.ndarray) -> float:
    """Entropy reduction H(y) - weighted child entropies for one split."""
    y = np.asarray(y)
    y_left = np.asarray(y_left)
    y_right = np.asarray(y_right)
    if y_left.size == 0 or y_right.size == 0:
        raise ValueError("degenerate split")
    n = y.size
    return (
        entropy(y)
        - (y_left.size / n) * entropy(y_left)
        - (y_right.size / n) * entropy(y_right)
    )


def _entropy_from_counts(counts: np.ndarray) -> np.ndarray:
    """Row-wise base-2 entropy of a (k, c) matrix of class counts."""
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(totals > 0, counts / totals, 0.0)
        plogp = np.where(p > 0.0, p * np.log2(p), 0.0)
    return -plogp.sum(axis=1)


@dataclass(frozen=True)
class Tree:
    """One flattened tree; index 0 is the root.

    feature[i] is -1 at leaves, a pool index otherwise; label[i] is -1 at
    internal nodes. count[i] is the number of training rows that reached
    node i (count[0] = n), gain[i] the information gain of the split (0 at
    leaves).
    """

    feature: np.ndarray
    cut: np.ndarray
    left: np.ndarray
    right: np.ndarray
    label: np.ndarray
    count: np.ndarray
    gain: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]


@dataclass(frozen=True)
class Forest:
    """A fitted ensemble plus everything prediction and reporting need."""

    trees: tuple[Tree, ...]
    pool: FeaturePool
    config: TrainConfig
    label_names: tuple[str, ...]
    lag: int
    m: int
    n_train: int

    @property
    def n_classes(self) -> int:
        return len(self.label_names)

    @property
    def n_trees(self) -> int:
        return len(self.trees)


def _candidate_count(mode: SplitMode, pool_size: int, override: int | None) -> int:
    if mode is SplitMode.ET1:
        return 1
    if mode is SplitMode.RF_ALL:
        return pool_size
    if override is not None:
        return min(override, pool_size)
    return min(math.ceil(math.sqrt(pool_size)), pool_size)


def _best_random_cuts(V: np.ndarray, onehot: np.ndarray, parent_h: float,
                      rng: np.random.Generator):
    """One uniform cut per candidate column; returns (col, cut, gain, mask)
    for the best column or None if no cut attains positive gain."""
    ns = V.shape[0]
    mins = V.min(axis=0)
    maxs = V.max(axis=0)
    cuts = rng.uniform(mins, maxs)
    left_mask = V <= cuts
    counts_left = left_mask.T.astype(np.float64) @ onehot
    totals = onehot.sum(axis=0)
    counts_right = totals[None, :] - counts_left
    n_left = counts_left.sum(axis=1)
    n_right = ns - n_left
    gains = (
        parent_h
        - (n_left / ns) * _entropy_from_counts(counts_left)
        - (n_right / ns) * _entropy_from_counts(counts_right)
    )
    gains[(maxs <= mins) | (n_left == 0) | (n_right == 0)] = -np.inf
    j = int(np.argmax(gains))
    if not gains[j] > 0.0:
        return None
    return j, float(cuts[j]), float(gains[j]), left_mask[:, j]


def _best_threshold(v: np.ndarray, onehot: np.ndarray, parent_h: float):
    """Exhaustive midpoint-threshold search on one column; returns
    (cut, gain) for the best boundary or None for a constant column."""
    order = np.argsort(v, kind="stable")
    vs = v[order]
    boundaries = np.nonzero(vs[:-1] < vs[1:])[0]
    if boundaries.size == 0:
        return None
    cum = np.cumsum(onehot[order], axis=0)
    ns = v.shape[0]
    counts_left = cum[boundaries]
    counts_right = cum[-1][None, :] - counts_left
    n_left = boundaries + 1.0
    n_right = ns - n_left
    gains = (
        parent_h
        - (n_left / ns) * _entropy_from_counts(counts_left)
        - (n_right / ns) * _entropy_from_counts(counts_right)
    )
    j = int(np.argmax(gains))
    cut = 0.5 * (vs[boundaries[j]] + vs[boundaries[j] + 1])
    return float(cut), float(gains[j])


def create_random_tree(
    values: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    config: TrainConfig,
    rng: np.random.Generator,
) -> Tree:
    """Grow one tree on the full training sample.

    Nodes stop splitting when pure, smaller than two rows, or when none of
    the node's candidate features attains strictly positive information
    gain; leaves take the majority label with ties broken toward the
    smallest class index.
    """
    n, pool_size = values.shape
    if n == 0:
        raise ValueError("empty training sample")
    mode = config.split_mode
    k = _candidate_count(mode, pool_size, config.candidates_per_node)

    feature: list[int] = []
    cut: list[float] = []
    left: list[int] = []
    right: list[int] = []
    label: list[int] = []
    count: list[int] = []
    gain: list[float] = []

    def _alloc() -> int:
        feature.append(-1)
        cut.append(0.0)
        left.append(-1)
        right.append(-1)
        label.append(-1)
        count.append(0)
        gain.append(0.0)
        return len(feature) - 1

    # stack entries: (parent node id, is_left_child, row indices); preorder
    # comes from pushing the right child before the left one.
    stack: list[tuple[int, bool, np.ndarray]] = [(-1, False, np.arange(n))]
    while stack:
        parent, is_left, rows = stack.pop()
        node = _alloc()
        if parent >= 0:
            if is_left:
                left[parent] = node
            else:
                right[parent] = node
        y_node = y[rows]
        ns = rows.shape[0]
        count[node] = ns
        class_counts = np.bincount(y_node, minlength=n_classes)
        if ns < 2 or class_counts.max() == ns:
            label[node] = int(np.argmax(class_counts))
            continue

        parent_h = float(_entropy_from_counts(class_counts[None, :].astype(np.float64))[0])
        onehot = np.zeros((ns, n_classes), dtype=np.float64)
        onehot[np.arange(ns), y_node] = 1.0

        if mode in (SplitMode.ET, SplitMode.ET1):
            cand = rng.choice(pool_size, size=k, replace=False)
            V = values[np.ix_(rows, cand)]
            found = _best_random_cuts(V, onehot, parent_h, rng)
            if found is None:
                label[node] = int(np.argmax(class_counts))
                continue
            j, best_cut, best_gain, left_mask = found
            best_feature = int(cand[j])
        else:
            if mode is SplitMode.RF_ALL:
                cand = np.arange(pool_size)
            else:
                cand = rng.choice(pool_size, size=k, replace=False)
            V = values[np.ix_(rows, cand)]
            best_gain = 0.0
            best_cut = 0.0
            best_j = -1
            for col in range(cand.shape[0]):
                found = _best_threshold(V[:, col], onehot, parent_h)
                if found is not None and found[1] > best_gain:
                    best_cut, best_gain = found
                    best_j = col
            if best_j < 0:
                label[node] = int(np.argmax(class_counts))
                continue
            best_feature = int(cand[best_j])
            left_mask = V[:, best_j] <= best_cut

        feature[node] = best_feature
        cut[node] = best_cut
        gain[node] = best_gain
        stack.append((node, False, rows[~left_mask]))
        stack.append((node, True, rows[left_mask]))

    return Tree(
        feature=np.asarray(feature, dtype=np.int32),
        cut=np.asarray(cut, dtype=np.float64),
        left=np.asarray(left, dtype=np.int32),
        right=np.asarray(right, dtype=np.int32),
        label=np.asarray(label, dtype=np.int32),
        count=np.asarray(count, dtype=np.int64),
        gain=np.asarray(gain, dtype=np.float64),
    )


def fit(train: LabeledDataset, config: TrainConfig = TrainConfig()) -> Forest:
    """Train a forest: representations, pooled interval search, then
    config.trees independent trees, each from its own derived seed."""
    reps = build_representation_set(train.values)
    pool = build_feature_pool(
        reps,
        train.labels,
        config.dsets,
        config.seed,
        representations=config.representations,
        aggregations=config.aggregations,
        partition_mode=config.partition_mode,
    )
    matrix = evaluate_pool(reps, pool)
    c = train.n_classes
    trees = tuple(
        create_random_tree(
            matrix, train.labels, c, config,
            _derived_rng(config.seed, _TREE_SEED_DOMAIN, i),
        )
        for i in range(config.trees)
    )
    return Forest(
        trees=trees,
        pool=pool,
        config=config,
        label_names=train.label_names,
        lag=reps.lag,
        m=train.m,
        n_train=train.n,
    )


def used_features(model: Forest) -> np.ndarray:
    """Sorted pool indices referenced by at least one internal node."""
    seen: set[int] = set()
    for tree in model.trees:
        seen.update(int(f) for f in tree.feature[tree.feature >= 0])
    return np.array(sorted(seen), dtype=np.int64)


def _route_tree(tree: Tree, test_cols: np.ndarray, colmap: np.ndarray) -> np.ndarray:
    """Leaf label per test row, routing all rows level by level."""
    n = test_cols.shape[0]
    cur = np.zeros(n, dtype=np.int64)
    while True:
        active = np.nonzero(tree.feature[cur] >= 0)[0]
        if active.size == 0:
            return tree.label[cur]
        nodes = cur[active]
        vals = test_cols[active, colmap[tree.feature[nodes]]]
        go_left = vals <= tree.cut[nodes]
        cur[active] = np.where(go_left, tree.left[nodes], tree.right[nodes])


def predict(model: Forest, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Classify each row of ``values``.

    Only pool features actually referenced by a tree are evaluated on the
    test data. Returns (labels, vote_fractions): per-row majority class over
    the trees (ties toward the smallest class index) and the full (n, c)
    fraction matrix.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values[None, :]
    if values.shape[1] != model.m:
        raise DataError(
            f"series length mismatch: model expects m={model.m}, got {values.shape[1]}"
        )
    reps = build_representation_set(values)
    used = used_features(model)
    colmap = np.full(len(model.pool), -1, dtype=np.int64)
    colmap[used] = np.arange(used.shape[0])
    if used.size:
        test_cols = np.column_stack(
            [feature_column(reps, model.pool.features[j]) for j in used]
        )
    else:
        test_cols = np.zeros((values.shape[0], 0))
    n = values.shape[0]
    votes = np.zeros((n, model.n_classes), dtype=np.int64)
    row_idx = np.arange(n)
    for tree in model.trees:
        votes[row_idx, _route_tree(tree, test_cols, colmap)] += 1
    fractions = votes / model.n_trees
    labels = np.argmax(votes, axis=1)
    return labels, fractions
