"""Enumerations and training configuration.

The short string values double as the CLI vocabulary and the tokens used in
the model file, so they must stay stable across releases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Representation(str, Enum):
    """The four derived views of a dataset that intervals are cut from."""

    ORIGINAL = "ori"
    PERIODOGRAM = "per"
    DERIVATIVE = "der"
    AUTOREGRESSIVE = "reg"


class Aggregation(str, Enum):
    """The nine statistics that turn an interval into a scalar feature."""

    MEAN = "mean"
    STD = "std"
    SLOPE = "slope"
    MEDIAN = "median"
    IQR = "iqr"
    MIN = "min"
    MAX = "max"
    CMC = "cmc"
    CAM = "cam"


class SplitMode(str, Enum):
    """How tree nodes pick candidate features and cut points.

    ET      sqrt-sized random feature subset, one random cut each
    ET1     a single random feature with one random cut
    RF      sqrt-sized random subset, exhaustive best threshold per feature
    RF_ALL  every pool feature, exhaustive thresholds
    """

    ET = "et"
    ET1 = "et1"
    RF = "rf"
    RF_ALL = "rf-all"


class PartitionMode(str, Enum):
    """Interval search cut points: uniformly random, or always the midpoint."""

    RANDOM = "random"
    FIXED = "fixed"


ALL_REPRESENTATIONS: tuple[Representation, ...] = tuple(Representation)
ALL_AGGREGATIONS: tuple[Aggregation, ...] = tuple(Aggregation)


@dataclass(frozen=True)
class TrainConfig:
    """Knobs for one training run.

    Parameters
    ----------
    trees : int
        Ensemble size r.
    dsets : int
        Number of candidate-extraction runs d merged into the feature pool.
    seed : int
        Master seed; every run and tree derives its own child generator.
    representations, aggregations : tuple
        Enabled subsets, kept in canonical declaration order.
    split_mode : SplitMode
        Node split strategy (see SplitMode).
    partition_mode : PartitionMode
        Random or fixed (midpoint) interval cuts during extraction.
    candidates_per_node : int or None
        Override for the per-node candidate count; None applies the default
        rule (ceil(sqrt(pool size)) for ET/RF, 1 for ET1, all for RF_ALL).
    """

    trees: int = 500
    dsets: int = 50
    seed: int = 0
    representations: tuple[Representation, ...] = ALL_REPRESENTATIONS
    aggregations: tuple[Aggregation, ...] = ALL_AGGREGATIONS
    split_mode: SplitMode = SplitMode.ET
    partition_mode: PartitionMode = PartitionMode.RANDOM
    candidates_per_node: int | None = field(default=None)

    def __post_init__(self) -> None:
        if self.trees < 1:
            raise ValueError("trees must be >= 1")
        if self.dsets < 1:
            raise ValueError("dsets must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
        if not self.representations:
            raise ValueError("at least one representation must be enabled")
        if not self.aggregations:
            raise ValueError("at least one aggregation must be enabled")
        if self.candidates_per_node is not None and self.candidates_per_node < 1:
            raise ValueError("candidates_per_node must be >= 1")
