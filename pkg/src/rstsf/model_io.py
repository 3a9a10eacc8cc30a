"""Versioned line-oriented text persistence for fitted forests.

The format is human-diffable and byte-stable: floats are rendered with
repr() (shortest round-trip form), so save -> load -> save reproduces the
file exactly. A trailing ``end`` sentinel makes truncation detectable.

Layout (one record per line)::

    rstsf-model v1
    trees/dsets/seed/split-mode/partition-mode/reprs/aggs/candidates lines
    m / lag / n / classes lines
    label <token>                  (c lines)
    pool <P>
    f <repr> <agg> <start> <end>   (P lines)
    tree <n_nodes>                 (r blocks)
    i <feature> <cut> <gain> <count> <left> <right>   internal node
    l <label> <count>                                  leaf node
    end
"""
from __future__ import annotations

import os

import numpy as np

from .config import (
    Aggregation,
    PartitionMode,
    Representation,
    SplitMode,
    TrainConfig,
)
from .errors import ModelError
from .features import FeaturePool, IntervalFeature
from .forest import Forest, Tree

_MAGIC = "rstsf-model"
_VERSION = "v1"


def save_model(model: Forest, path: str | os.PathLike[str]) -> None:
    cfg = model.config
    lines: list[str] = [
        f"{_MAGIC} {_VERSION}",
        f"trees {cfg.trees}",
        f"dsets {cfg.dsets}",
        f"seed {cfg.seed}",
        f"split-mode {cfg.split_mode.value}",
        f"partition-mode {cfg.partition_mode.value}",
        "reprs " + ",".join(r.value for r in cfg.representations),
        "aggs " + ",".join(a.value for a in cfg.aggregations),
        "candidates " + ("-" if cfg.candidates_per_node is None else str(cfg.candidates_per_node)),
        f"m {model.m}",
        f"lag {model.lag}",
        f"n {model.n_train}",
        f"classes {model.n_classes}",
    ]
    lines.extend(f"label {tok}" for tok in model.label_names)
    lines.append(f"pool {len(model.pool)}")
    for feat, run in zip(model.pool.features, model.pool.provenance):
        lines.append(f"f {feat.repr.value} {feat.agg.value} {feat.start} {feat.end} {run}")
    for tree in model.trees:
        lines.append(f"tree {tree.n_nodes}")
        for i in range(tree.n_nodes):
            if tree.feature[i] >= 0:
                lines.append(
                    f"i {tree.feature[i]} {float(tree.cut[i])!r} {float(tree.gain[i])!r} "
                    f"{tree.count[i]} {tree.left[i]} {tree.right[i]}"
                )
            else:
                lines.append(f"l {tree.label[i]} {tree.count[i]}")
    lines.append("end")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


class _Reader:
    def __init__(self, path: str | os.PathLike[str]) -> None:
        with open(path, encoding="utf-8") as fh:
            self.lines = fh.read().splitlines()
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ModelError("corrupt model: unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def field(self, key: str) -> str:
        line = self.next()
        prefix = key + " "
        if not line.startswith(prefix):
            raise ModelError(f"corrupt model: expected {key!r} at line {self.pos}")
        return line[len(prefix) :]

    def int_field(self, key: str) -> int:
        return self._parse_int(self.field(key))

    def _parse_int(self, text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise ModelError(f"corrupt model: bad integer at line {self.pos}") from None


def _parse_enum(enum_cls, token: str, pos: int):
    try:
        return enum_cls(token)
    except ValueError:
        raise ModelError(f"corrupt model: unknown token {token!r} at line {pos}") from None


def load_model(path: str | os.PathLike[str]) -> Forest:
    r = _Reader(path)
    header = r.next()
    if not header.startswith(_MAGIC + " "):
        raise ModelError("corrupt model: missing header")
    if header != f"{_MAGIC} {_VERSION}":
        raise ModelError(f"incompatible model: {header!r}, expected version {_VERSION}")
    try:
        trees_n = r.int_field("trees")
        dsets = r.int_field("dsets")
        seed = r.int_field("seed")
        split_mode = _parse_enum(SplitMode, r.field("split-mode"), r.pos)
        partition_mode = _parse_enum(PartitionMode, r.field("partition-mode"), r.pos)
        reprs = tuple(
            _parse_enum(Representation, tok, r.pos) for tok in r.field("reprs").split(",")
        )
        aggs = tuple(
            _parse_enum(Aggregation, tok, r.pos) for tok in r.field("aggs").split(",")
        )
        cand_text = r.field("candidates")
        candidates = None if cand_text == "-" else r._parse_int(cand_text)
        m = r.int_field("m")
        lag = r.int_field("lag")
        n_train = r.int_field("n")
        n_classes = r.int_field("classes")
        label_names = tuple(r.field("label") for _ in range(n_classes))
        config = TrainConfig(
            trees=trees_n,
            dsets=dsets,
            seed=seed,
            representations=reprs,
            aggregations=aggs,
            split_mode=split_mode,
            partition_mode=partition_mode,
            candidates_per_node=candidates,
        )
    except ValueError as exc:
        raise ModelError(f"corrupt model: {exc}") from None

    pool_size = r.int_field("pool")
    feats: list[IntervalFeature] = []
    provenance: list[int] = []
    for _ in range(pool_size):
        parts = r.field("f").split(" ")
        if len(parts) != 5:
            raise ModelError(f"corrupt model: bad feature record at line {r.pos}")
        feats.append(
            IntervalFeature(
                repr=_parse_enum(Representation, parts[0], r.pos),
                agg=_parse_enum(Aggregation, parts[1], r.pos),
                start=r._parse_int(parts[2]),
                end=r._parse_int(parts[3]),
            )
        )
        provenance.append(r._parse_int(parts[4]))
    pool = FeaturePool(features=tuple(feats), provenance=tuple(provenance))

    trees: list[Tree] = []
    for _ in range(trees_n):
        n_nodes = r.int_field("tree")
        feature = np.full(n_nodes, -1, dtype=np.int32)
        cut = np.zeros(n_nodes, dtype=np.float64)
        left = np.full(n_nodes, -1, dtype=np.int32)
        right = np.full(n_nodes, -1, dtype=np.int32)
        label = np.full(n_nodes, -1, dtype=np.int32)
        count = np.zeros(n_nodes, dtype=np.int64)
        gain = np.zeros(n_nodes, dtype=np.float64)
        for i in range(n_nodes):
            parts = r.next().split(" ")
            if parts[0] == "i" and len(parts) == 7:
                feature[i] = r._parse_int(parts[1])
                cut[i] = _parse_float(parts[2], r.pos)
                gain[i] = _parse_float(parts[3], r.pos)
                count[i] = r._parse_int(parts[4])
                left[i] = r._parse_int(parts[5])
                right[i] = r._parse_int(parts[6])
                if not 0 <= feature[i] < pool_size:
                    raise ModelError(f"corrupt model: feature index out of range at line {r.pos}")
            elif parts[0] == "l" and len(parts) == 3:
                label[i] = r._parse_int(parts[1])
                count[i] = r._parse_int(parts[2])
            else:
                raise ModelError(f"corrupt model: bad node record at line {r.pos}")
        trees.append(
            Tree(feature=feature, cut=cut, left=left, right=right,
                 label=label, count=count, gain=gain)
        )

    if r.next() != "end":
        raise ModelError("corrupt model: missing end sentinel")
    if r.pos != len(r.lines):
        raise ModelError("corrupt model: trailing data after end sentinel")
    return Forest(
        trees=tuple(trees),
        pool=pool,
        config=config,
        label_names=label_names,
        lag=lag,
        m=m,
        n_train=n_train,
    )


def _parse_float(text: str, pos: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ModelError(f"corrupt model: bad float at line {pos}") from None
