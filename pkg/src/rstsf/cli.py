"""Command-line interface.

Subcommands: fit, predict, evaluate, importance, heatmap, bench, ablate.
Exit codes: 0 success, 1 usage error, 2 data error, 3 model error. Errors
print a single diagnostic line to stderr.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
import time

import numpy as np

from .config import (
    ALL_AGGREGATIONS,
    ALL_REPRESENTATIONS,
    Aggregation,
    PartitionMode,
    Representation,
    SplitMode,
    TrainConfig,
)
from .dataset import LabeledDataset, load_ucr_tsv
from .errors import DataError, ModelError
from .forest import Forest, fit, predict
from .interpret import group_importance, interval_heatmap, mdi
from .metrics import AccuracyMatrix, accuracy, average_rank, weighted_average_accuracy
from .model_io import load_model, save_model


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _parse_subset(text: str, enum_cls, canonical: tuple, flag: str) -> tuple:
    chosen = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            chosen.add(enum_cls(token))
        except ValueError:
            valid = ",".join(e.value for e in canonical)
            raise _UsageError(f"{flag}: unknown value {token!r} (valid: {valid})") from None
    if not chosen:
        raise _UsageError(f"{flag}: empty selection")
    return tuple(e for e in canonical if e in chosen)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trees", type=int, default=500, metavar="INT")
    p.add_argument("--dsets", type=int, default=50, metavar="INT",
                   help="number of feature-extraction runs merged into the pool")
    p.add_argument("--seed", type=int, default=0, metavar="INT")
    p.add_argument("--reprs", default=None, metavar="CSV",
                   help="subset of ori,per,der,reg (default: all)")
    p.add_argument("--aggs", default=None, metavar="CSV",
                   help="subset of mean,std,slope,median,iqr,min,max,cmc,cam (default: all)")
    p.add_argument("--split-mode", choices=[m.value for m in SplitMode], default="et")
    p.add_argument("--partition-mode", choices=[m.value for m in PartitionMode],
                   default="random")


def _config_from_args(args: argparse.Namespace) -> TrainConfig:
    reprs = ALL_REPRESENTATIONS
    if args.reprs is not None:
        reprs = _parse_subset(args.reprs, Representation, ALL_REPRESENTATIONS, "--reprs")
    aggs = ALL_AGGREGATIONS
    if args.aggs is not None:
        aggs = _parse_subset(args.aggs, Aggregation, ALL_AGGREGATIONS, "--aggs")
    try:
        return TrainConfig(
            trees=args.trees,
            dsets=args.dsets,
            seed=args.seed,
            representations=reprs,
            aggregations=aggs,
            split_mode=SplitMode(args.split_mode),
            partition_mode=PartitionMode(args.partition_mode),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _write_lines(path: str, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_fit(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    train = load_ucr_tsv(args.train)
    start = time.perf_counter()
    model = fit(train, config)
    seconds = time.perf_counter() - start
    save_model(model, args.out)
    print(f"pool={len(model.pool)} train_seconds={seconds:.3f}")
    return 0


def _evaluate_pair(model: Forest, test: LabeledDataset) -> float:
    pred, _ = predict(model, test.values)
    name_to_idx = {tok: k for k, tok in enumerate(model.label_names)}
    truth = np.array(
        [name_to_idx.get(test.label_names[lbl], -1) for lbl in test.labels],
        dtype=np.int64,
    )
    return accuracy(pred, truth)


def cmd_predict(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    test = load_ucr_tsv(args.test)
    labels, fractions = predict(model, test.values)
    c = model.n_classes
    header = "index,label," + ",".join(f"frac_{k}" for k in range(c))
    lines = [header]
    for i in range(labels.shape[0]):
        fracs = ",".join(repr(float(fr)) for fr in fractions[i])
        lines.append(f"{i},{model.label_names[labels[i]]},{fracs}")
    _write_lines(args.out, lines)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    test = load_ucr_tsv(args.test)
    print(f"accuracy={_evaluate_pair(model, test)!r}")
    return 0


def cmd_importance(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    scores = mdi(model)
    lines = ["repr,agg,start,end,mdi"]
    for feat, score in zip(model.pool.features, scores):
        lines.append(
            f"{feat.repr.value},{feat.agg.value},{feat.start},{feat.end},{float(score)!r}"
        )
    _write_lines(args.out, lines)
    repr_imp = group_importance(model, "representation")
    agg_imp = group_importance(model, "aggregation")
    print("repr_importance " + " ".join(
        f"{r.value}={float(v)!r}" for r, v in zip(ALL_REPRESENTATIONS, repr_imp)))
    print("agg_importance " + " ".join(
        f"{a.value}={float(v)!r}" for a, v in zip(ALL_AGGREGATIONS, agg_imp)))
    return 0


def cmd_heatmap(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    try:
        repr_id = Representation(args.reprs)
    except ValueError:
        raise _UsageError(f"--reprs: unknown representation {args.reprs!r}") from None
    filter_agg = None
    if args.aggs is not None:
        try:
            filter_agg = Aggregation(args.aggs)
        except ValueError:
            raise _UsageError(f"--aggs: unknown aggregation {args.aggs!r}") from None
    heat = interval_heatmap(model, repr_id, filter_agg)
    lines = ["index,weight"]
    lines.extend(f"{t},{float(w)!r}" for t, w in enumerate(heat.weights))
    _write_lines(args.out, lines)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    if args.runs < 1:
        raise _UsageError("--runs must be >= 1")
    base = _config_from_args(args)
    train = load_ucr_tsv(args.train)
    test = load_ucr_tsv(args.test)
    accs: list[float] = []
    fit_times: list[float] = []
    eval_times: list[float] = []
    for run in range(args.runs):
        config = dataclasses.replace(base, seed=base.seed + run)
        t0 = time.perf_counter()
        model = fit(train, config)
        t1 = time.perf_counter()
        acc = _evaluate_pair(model, test)
        t2 = time.perf_counter()
        accs.append(acc)
        fit_times.append(t1 - t0)
        eval_times.append(t2 - t1)
        print(
            f"run={run} seed={config.seed} accuracy={acc!r} "
            f"train_seconds={t1 - t0:.3f} test_seconds={t2 - t1:.3f}"
        )
    print(
        f"accuracy_mean={float(np.mean(accs))!r} accuracy_std={float(np.std(accs))!r} "
        f"train_seconds_mean={float(np.mean(fit_times)):.3f} "
        f"test_seconds_mean={float(np.mean(eval_times)):.3f}"
    )
    return 0


def _ablation_variants(axis: str, base: TrainConfig) -> list[tuple[str, TrainConfig]]:
    def derive(**overrides) -> TrainConfig:
        return dataclasses.replace(base, **overrides)

    if axis == "partition":
        return [
            ("random", derive(partition_mode=PartitionMode.RANDOM)),
            ("fixed", derive(partition_mode=PartitionMode.FIXED)),
        ]
    if axis == "split":
        return [(m.value, derive(split_mode=m)) for m in SplitMode]
    if axis == "reprs":
        out = [("all", derive(representations=ALL_REPRESENTATIONS))]
        out.extend(
            (r.value, derive(representations=(r,))) for r in ALL_REPRESENTATIONS
        )
        return out
    if axis == "aggs":
        out = [("all", derive(aggregations=ALL_AGGREGATIONS))]
        for a in ALL_AGGREGATIONS:
            rest = tuple(x for x in ALL_AGGREGATIONS if x is not a)
            out.append((f"no-{a.value}", derive(aggregations=rest)))
        return out
    if axis == "d":
        return [(f"d{d}", derive(dsets=d)) for d in (25, 50, 100, 150)]
    raise _UsageError(f"--axis: unknown axis {axis!r}")


def _resolve_split(data_dir: str, name: str, part: str) -> str:
    for candidate in (
        os.path.join(data_dir, name, f"{name}_{part}.tsv"),
        os.path.join(data_dir, f"{name}_{part}.tsv"),
    ):
        if os.path.exists(candidate):
            return candidate
    raise DataError(f"missing {part} file for dataset {name!r} under {data_dir!r}")


def cmd_ablate(args: argparse.Namespace) -> int:
    base = _config_from_args(args)
    variants = _ablation_variants(args.axis, base)
    names = [n.strip() for n in args.datasets.split(",") if n.strip()]
    if not names:
        raise _UsageError("--datasets: empty selection")
    Z = np.zeros((len(names), len(variants)), dtype=np.float64)
    for i, name in enumerate(names):
        train = load_ucr_tsv(_resolve_split(args.data_dir, name, "TRAIN"))
        test = load_ucr_tsv(_resolve_split(args.data_dir, name, "TEST"))
        for j, (_, config) in enumerate(variants):
            model = fit(train, config)
            Z[i, j] = _evaluate_pair(model, test)
    matrix = AccuracyMatrix(
        Z=Z,
        dataset_names=tuple(names),
        classifier_names=tuple(v[0] for v in variants),
    )
    lines = ["dataset," + ",".join(matrix.classifier_names)]
    for i, name in enumerate(names):
        lines.append(name + "," + ",".join(repr(float(v)) for v in Z[i]))
    ranks = average_rank(matrix)
    lines.append("avg_rank," + ",".join(repr(float(v)) for v in ranks))
    try:
        waa = weighted_average_accuracy(matrix)
        lines.append("waa," + ",".join(repr(float(v)) for v in waa))
    except DataError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        lines.append("waa," + ",".join(["nan"] * len(variants)))
    _write_lines(args.out, lines)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="rstsf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="train a model and write it to a file")
    p.add_argument("--train", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    _add_config_flags(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="write per-series predictions as CSV")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--test", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="print accuracy on a labeled test file")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--test", required=True, metavar="PATH")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("importance", help="write per-feature MDI as CSV")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_importance)

    p = sub.add_parser("heatmap", help="write a per-position split-coverage CSV")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--reprs", required=True, metavar="REPR",
                   help="one of ori,per,der,reg")
    p.add_argument("--aggs", default=None, metavar="AGG",
                   help="optional single aggregation filter")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("bench", help="repeat fit+evaluate over consecutive seeds")
    p.add_argument("--train", required=True, metavar="PATH")
    p.add_argument("--test", required=True, metavar="PATH")
    p.add_argument("--runs", type=int, default=10, metavar="INT")
    _add_config_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("ablate", help="sweep one config axis over datasets")
    p.add_argument("--data-dir", required=True, metavar="PATH")
    p.add_argument("--datasets", required=True, metavar="CSV")
    p.add_argument("--axis", required=True,
                   choices=["partition", "split", "reprs", "aggs", "d"])
    p.add_argument("--out", required=True, metavar="PATH")
    _add_config_flags(p)
    p.set_defaults(func=cmd_ablate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
