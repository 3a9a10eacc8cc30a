"""Randomized supervised time series forest.

An interval-feature ensemble classifier for equal-length univariate time
series: four derived representations, a class-separability-guided randomized
interval search, and an ensemble of randomized binary trees, with feature
and interval importance reports.
"""

from .config import (
    ALL_AGGREGATIONS,
    ALL_REPRESENTATIONS,
    Aggregation,
    PartitionMode,
    Representation,
    SplitMode,
    TrainConfig,
)
from .dataset import LabeledDataset, class_counts, load_ucr_tsv, save_ucr_tsv
from .errors import DataError, ModelError
from .features import (
    FeaturePool,
    IntervalFeature,
    aggregate,
    build_feature_pool,
    evaluate_pool,
    feature_column,
    fisher_score,
    get_interval_features,
    random_cut_point,
    supervised_interval_search,
)
from .forest import (
    Forest,
    Tree,
    create_random_tree,
    entropy,
    fit,
    information_gain,
    predict,
    used_features,
)
from .interpret import (
    Heatmap,
    ImportanceReport,
    group_importance,
    importance_report,
    interval_heatmap,
    mdi,
)
from .metrics import (
    AccuracyMatrix,
    accuracy,
    average_rank,
    weighted_average_accuracy,
)
from .model_io import load_model, save_model
from .representations import (
    RepresentationSet,
    build_representation_set,
    burg_ar,
    derivative,
    periodogram,
    representation_width,
    schwert_lag,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_AGGREGATIONS",
    "ALL_REPRESENTATIONS",
    "AccuracyMatrix",
    "Aggregation",
    "DataError",
    "FeaturePool",
    "Forest",
    "Heatmap",
    "ImportanceReport",
    "IntervalFeature",
    "LabeledDataset",
    "ModelError",
    "PartitionMode",
    "Representation",
    "RepresentationSet",
    "SplitMode",
    "TrainConfig",
    "Tree",
    "accuracy",
    "aggregate",
    "average_rank",
    "build_feature_pool",
    "build_representation_set",
    "burg_ar",
    "class_counts",
    "create_random_tree",
    "derivative",
    "entropy",
    "evaluate_pool",
    "feature_column",
    "fisher_score",
    "fit",
    "get_interval_features",
    "group_importance",
    "importance_report",
    "information_gain",
    "interval_heatmap",
    "load_model",
    "load_ucr_tsv",
    "mdi",
    "periodogram",
    "predict",
    "random_cut_point",
    "representation_width",
    "save_model",
    "save_ucr_tsv",
    "schwert_lag",
    "supervised_interval_search",
    "used_features",
    "weighted_average_accuracy",
]
