"""Interval features: the nine aggregation statistics, Fisher-score ranking,
and the supervised randomized interval search that produces the candidate
feature pool.

A feature is (representation, aggregation, start, end): the aggregation
applied to the inclusive index range [start, end] of one representation row,
evaluated for every series. The pool is built by repeating a randomized
class-separability-guided search d times and merging the results as a set.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import (
    ALL_AGGREGATIONS,
    ALL_REPRESENTATIONS,
    Aggregation,
    PartitionMode,
    Representation,
)
from .errors import DataError
from .representations import RepresentationSet

_POOL_SEED_DOMAIN = 1


@dataclass(frozen=True)
class IntervalFeature:
    """One candidate feature: an aggregation over [start, end] of one
    representation. start/end are inclusive column indices."""

    repr: Representation
    agg: Aggregation
    start: int
    end: int


@dataclass(frozen=True)
class FeaturePool:
    """Deduplicated, ordered collection of candidate features.

    provenance[j] is the index of the extraction run that first emitted
    features[j].
    """

    features: tuple[IntervalFeature, ...]
    provenance: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.features)


# Aggregation kernels. Each takes a segment matrix (n, w) plus the vector of
# full-representation-row means (only cmc reads it) and returns a length-n
# column of feature values.


def _agg_mean(seg: np.ndarray, _means) -> np.ndarray:
    return seg.mean(axis=1)


def _agg_std(seg: np.ndarray, _means) -> np.ndarray:
    return seg.std(axis=1)


def _agg_slope(seg: np.ndarray, _means) -> np.ndarray:
    w = seg.shape[1]
    if w == 1:
        return np.zeros(seg.shape[0])
    t = np.arange(w, dtype=np.float64)
    tc = t - t.mean()
    return (seg @ tc) / (tc @ tc)


def _agg_median(seg: np.ndarray, _means) -> np.ndarray:
    return np.median(seg, axis=1)


def _agg_iqr(seg: np.ndarray, _means) -> np.ndarray:
    q1, q3 = np.percentile(seg, [25.0, 75.0], axis=1)
    return q3 - q1


def _agg_min(seg: np.ndarray, _means) -> np.ndarray:
    return seg.min(axis=1)


def _agg_max(seg: np.ndarray, _means) -> np.ndarray:
    return seg.max(axis=1)


def _agg_cmc(seg: np.ndarray, means: np.ndarray) -> np.ndarray:
    if seg.shape[1] == 1:
        return np.zeros(seg.shape[0])
    dev = seg - means[:, None]
    return ((dev[:, :-1] * dev[:, 1:]) < 0.0).sum(axis=1).astype(np.float64)


def _agg_cam(seg: np.ndarray, _means) -> np.ndarray:
    return (seg > seg.mean(axis=1, keepdims=True)).sum(axis=1).astype(np.float64)


_KERNELS = {
    Aggregation.MEAN: _agg_mean,
    Aggregation.STD: _agg_std,
    Aggregation.SLOPE: _agg_slope,
    Aggregation.MEDIAN: _agg_median,
    Aggregation.IQR: _agg_iqr,
    Aggregation.MIN: _agg_min,
    Aggregation.MAX: _agg_max,
    Aggregation.CMC: _agg_cmc,
    Aggregation.CAM: _agg_cam,
}


def aggregate(agg: Aggregation, segment: np.ndarray, series_mean: float) -> float:
    """Apply one aggregation to a single segment.

    ``series_mean`` must be the mean of the entire representation row the
    segment was cut from; only cmc uses it (crossings are counted against
    that whole-row mean axis, not the segment's own mean).
    """
    seg = np.asarray(segment, dtype=np.float64).reshape(1, -1)
    return float(_KERNELS[agg](seg, np.array([series_mean], dtype=np.float64))[0])


def feature_column(reps: RepresentationSet, feat: IntervalFeature) -> np.ndarray:
    """Evaluate one feature on every series: out[i] = aggregate over row i."""
    mat = reps.matrix(feat.repr)
    width = mat.shape[1]
    if not 0 <= feat.start <= feat.end < width:
        raise DataError(
            f"invalid interval [{feat.start}, {feat.end}] for {feat.repr.value} width {width}"
        )
    seg = mat[:, feat.start : feat.end + 1]
    return _KERNELS[feat.agg](seg, reps.means(feat.repr))


def _column(reps, repr_id, agg, start, end):
    # feature_column without the bounds re-check, for the search inner loop
    seg = reps.matrix(repr_id)[:, start : end + 1]
    return _KERNELS[agg](seg, reps.means(repr_id))


def fisher_score(f: np.ndarray, y: np.ndarray, counts: np.ndarray) -> float:
    """Between-class over within-class scatter of one feature column.

    Computed on the overall-mean-centered column as BSS / (TSS - BSS), which
    is algebraically the ratio of Formula sum_k n_k (mu_k - mu)^2 over
    sum_k n_k sigma_k^2 with population variances, but stays stable under
    large constant offsets. Perfect separation (zero within-class scatter
    with nonzero between-class scatter) returns +inf; a constant column
    returns 0.

    Raises
    ------
    DataError
        "undefined score" when fewer than two classes are present.
    """
    counts = np.asarray(counts)
    if np.count_nonzero(counts) < 2:
        raise DataError("undefined score")
    f = np.asarray(f, dtype=np.float64)
    n = f.shape[0]
    centered = f - f.mean()
    tss = centered @ centered
    amax = np.abs(f).max()
    # Variation within ~4 ulps of the raw magnitude is rounding noise from
    # the centering, not signal: treat the column as constant.
    if tss <= n * (8.0 * np.finfo(np.float64).eps * amax) ** 2:
        return 0.0
    c = counts.shape[0]
    sums = np.bincount(y, weights=centered, minlength=c)
    means = np.divide(sums, counts, out=np.zeros(c), where=counts > 0)
    bss = float(np.sum(counts * means * means))
    denom = tss - bss
    if denom <= 1e-12 * tss:
        return float("inf")
    return bss / denom


def random_cut_point(
    length: int,
    rng: np.random.Generator,
    partition_mode: PartitionMode = PartitionMode.RANDOM,
) -> int:
    """Cut position u in [1, length-1]: left part gets u points, right part
    the rest, both non-empty. Fixed mode always cuts at ceil(length/2)."""
    if length < 2:
        raise ValueError("segment too short")
    if partition_mode is PartitionMode.FIXED:
        return (length + 1) // 2
    return int(rng.integers(1, length))


def supervised_interval_search(
    reps: RepresentationSet,
    repr_id: Representation,
    agg: Aggregation,
    y: np.ndarray,
    lo: int,
    hi: int,
    rng: np.random.Generator,
    out: list[IntervalFeature],
    *,
    counts: np.ndarray | None = None,
    partition_mode: PartitionMode = PartitionMode.RANDOM,
) -> None:
    """Randomized best-half descent over [lo, hi], appending one interval per
    level to ``out``.

    Each level cuts the current segment in two disjoint halves, scores both
    with the Fisher score of their feature columns, keeps the higher-scoring
    half (ties go left), and descends into it until fewer than two points
    remain. Emitted intervals are therefore nested or disjoint and the
    recursion always terminates.
    """
    if counts is None:
        counts = np.bincount(y)
    while hi - lo + 1 >= 2:
        u = random_cut_point(hi - lo + 1, rng, partition_mode)
        mid = lo + u
        left_col = _column(reps, repr_id, agg, lo, mid - 1)
        right_col = _column(reps, repr_id, agg, mid, hi)
        if fisher_score(left_col, y, counts) >= fisher_score(right_col, y, counts):
            hi = mid - 1
        else:
            lo = mid
        out.append(IntervalFeature(repr=repr_id, agg=agg, start=lo, end=hi))


def get_interval_features(
    reps: RepresentationSet,
    y: np.ndarray,
    rng: np.random.Generator,
    *,
    representations: tuple[Representation, ...] = ALL_REPRESENTATIONS,
    aggregations: tuple[Aggregation, ...] = ALL_AGGREGATIONS,
    partition_mode: PartitionMode = PartitionMode.RANDOM,
    counts: np.ndarray | None = None,
) -> list[IntervalFeature]:
    """One extraction run: for every enabled (representation, aggregation)
    pair, cut the full representation width once at random and run the
    supervised search on each half independently.

    Representations narrower than two columns (possible for a tiny
    autoregressive lag) are skipped silently.
    """
    if counts is None:
        counts = np.bincount(y)
    out: list[IntervalFeature] = []
    for repr_id in representations:
        width = reps.width(repr_id)
        if width < 2:
            continue
        for agg in aggregations:
            u = random_cut_point(width, rng, partition_mode)
            supervised_interval_search(
                reps, repr_id, agg, y, 0, u - 1, rng, out,
                counts=counts, partition_mode=partition_mode,
            )
            supervised_interval_search(
                reps, repr_id, agg, y, u, width - 1, rng, out,
                counts=counts, partition_mode=partition_mode,
            )
    return out


def build_feature_pool(
    reps: RepresentationSet,
    y: np.ndarray,
    d: int,
    seed: int,
    *,
    representations: tuple[Representation, ...] = ALL_REPRESENTATIONS,
    aggregations: tuple[Aggregation, ...] = ALL_AGGREGATIONS,
    partition_mode: PartitionMode = PartitionMode.RANDOM,
) -> FeaturePool:
    """Union of d extraction runs, deduplicated in first-seen order.

    Run i draws from a generator seeded by (seed, run index), so the pool is
    identical whether runs execute sequentially or in parallel, and the pool
    for d runs is always a prefix-superset of the pool for fewer runs with
    the same seed.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    counts = np.bincount(y)
    seen: dict[IntervalFeature, int] = {}
    for run in range(d):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([seed, _POOL_SEED_DOMAIN, run]))
        )
        for feat in get_interval_features(
            reps, y, rng,
            representations=representations,
            aggregations=aggregations,
            partition_mode=partition_mode,
            counts=counts,
        ):
            if feat not in seen:
                seen[feat] = run
    if not seen:
        raise DataError("no candidate features")
    return FeaturePool(features=tuple(seen), provenance=tuple(seen.values()))


def evaluate_pool(reps: RepresentationSet, pool: FeaturePool) -> np.ndarray:
    """Materialize the n x |pool| feature matrix, column j = feature j."""
    cols = [feature_column(reps, feat) for feat in pool.features]
    return np.column_stack(cols)
