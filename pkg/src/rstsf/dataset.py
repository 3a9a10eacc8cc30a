"""Loading, validation, and encoding of UCR-format time series datasets.

The on-disk format is one series per line: a label token followed by the
series values, separated by tabs (preferred) or commas. Labels may be
arbitrary tokens; they are mapped to contiguous class indices by sorting the
distinct tokens lexicographically, which makes the encoding reproducible
across loads and machines.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class LabeledDataset:
    """n equal-length series with integer class labels.

    Attributes
    ----------
    values : ndarray, shape (n, m)
    labels : ndarray of int, shape (n,)
        Class indices in [0, c).
    label_names : tuple of str
        Original label tokens, index k holds the token encoded as class k.
    name : str
        Dataset identifier (the file stem for loaded files).
    """

    values: np.ndarray
    labels: np.ndarray
    label_names: tuple[str, ...]
    name: str = ""

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.label_names)


def _split_line(line: str) -> list[str]:
    # Tab preferred, comma fallback; UCR files never mix separators.
    if "\t" in line:
        return line.split("\t")
    if "," in line:
        return line.split(",")
    return line.split()


def load_ucr_tsv(path: str | os.PathLike[str]) -> LabeledDataset:
    """Parse a UCR-style TSV/CSV file into a LabeledDataset.

    Raises
    ------
    DataError
        "empty dataset" for files with no data lines, "inconsistent series
        length" for ragged rows, "invalid value at line/column" for
        non-numeric or non-finite fields.
    """
    tokens: list[str] = []
    rows: list[list[float]] = []
    width: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line:
                continue
            fields = _split_line(line)
            if width is None:
                width = len(fields)
                if width < 4:
                    raise DataError(
                        f"series too short: {width - 1} values per row, need at least 3"
                    )
            elif len(fields) != width:
                raise DataError(
                    f"inconsistent series length: line {lineno} has "
                    f"{len(fields) - 1} values, expected {width - 1}"
                )
            row = []
            for col, fld in enumerate(fields[1:], start=2):
                try:
                    val = float(fld)
                except ValueError:
                    raise DataError(
                        f"invalid value at line/column {lineno}/{col}: {fld!r}"
                    ) from None
                if not math.isfinite(val):
                    raise DataError(
                        f"invalid value at line/column {lineno}/{col}: {fld!r}"
                    )
                row.append(val)
            tokens.append(fields[0])
            rows.append(row)
    if not rows:
        raise DataError("empty dataset")

    names = tuple(sorted(set(tokens)))
    index = {tok: k for k, tok in enumerate(names)}
    labels = np.array([index[tok] for tok in tokens], dtype=np.int64)
    values = np.array(rows, dtype=np.float64)
    stem = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return LabeledDataset(values=values, labels=labels, label_names=names, name=stem)


def save_ucr_tsv(ds: LabeledDataset, path: str | os.PathLike[str]) -> None:
    """Write a dataset back to the tab-separated archive format.

    Values are rendered with repr(), so a load/save cycle reproduces finite
    decimal inputs exactly within printed precision.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(ds.n):
            fields = [ds.label_names[ds.labels[i]]]
            fields.extend(repr(float(v)) for v in ds.values[i])
            fh.write("\t".join(fields) + "\n")


def class_counts(ds: LabeledDataset) -> np.ndarray:
    """counts[k] = number of series labeled with class k; sums to n."""
    return np.bincount(ds.labels, minlength=ds.n_classes)
