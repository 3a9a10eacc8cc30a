from __future__ import annotations

import os

import numpy as np
import pytest

from rstsf import LabeledDataset

UCR_ENV = "RSTSF_UCR_DIR"


def make_separable(
    n: int = 40, m: int = 32, noise: float = 0.05, seed: int = 0
) -> LabeledDataset:
    """Two classes split by slope sign: noisy up-ramps vs down-ramps."""
    rng = np.random.default_rng(seed)
    t = np.arange(m) / m
    half = n // 2
    up = t[None, :] + noise * rng.standard_normal((half, m))
    down = t[::-1][None, :] + noise * rng.standard_normal((n - half, m))
    values = np.vstack([up, down])
    labels = np.array([0] * half + [1] * (n - half), dtype=np.int64)
    return LabeledDataset(values=values, labels=labels, label_names=("up", "down"),
                          name="separable")


def make_three_class(n_per: int = 8, m: int = 24, seed: int = 1) -> LabeledDataset:
    """Ramp, sine, and flat-noise classes; separable but not trivially."""
    rng = np.random.default_rng(seed)
    t = np.arange(m) / m
    ramp = 2.0 * t[None, :] + 0.1 * rng.standard_normal((n_per, m))
    sine = np.sin(4 * np.pi * t)[None, :] + 0.1 * rng.standard_normal((n_per, m))
    flat = 0.15 * rng.standard_normal((n_per, m))
    values = np.vstack([ramp, sine, flat])
    labels = np.repeat(np.arange(3), n_per)
    return LabeledDataset(values=values, labels=labels,
                          label_names=("ramp", "sine", "flat"), name="threeclass")


@pytest.fixture
def separable() -> LabeledDataset:
    return make_separable()


@pytest.fixture
def three_class() -> LabeledDataset:
    return make_three_class()


def ucr_paths(name: str) -> tuple[str, str]:
    """Locate <name>_TRAIN.tsv / <name>_TEST.tsv under the archive directory
    named by the RSTSF_UCR_DIR environment variable, or skip the test."""
    root = os.environ.get(UCR_ENV)
    if not root:
        pytest.skip(
            f"needs real archive data: set {UCR_ENV} to a directory laid out as "
            f"<dir>/{name}/{name}_TRAIN.tsv (UCRArchive_2018 layout)"
        )
    for base in (os.path.join(root, name), root):
        train = os.path.join(base, f"{name}_TRAIN.tsv")
        test = os.path.join(base, f"{name}_TEST.tsv")
        if os.path.exists(train) and os.path.exists(test):
            return train, test
    pytest.skip(
        f"dataset {name} not found under {UCR_ENV}={root!r} "
        f"(expected {name}/{name}_TRAIN.tsv and _TEST.tsv)"
    )
