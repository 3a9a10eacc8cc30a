"""The four derived views of a dataset: original, periodogram, derivative,
and autoregressive coefficients.

All transforms are pure functions applied row-wise. The periodogram keeps the
unnormalized DFT magnitudes at frequency indices 1..floor(m/2) (the DC term
carries the same information as the series mean, which the original
representation already exposes). The autoregressive view fits an AR(l) model
per series with Burg's method on the mean-centered values and keeps only the
coefficient vector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import Representation
from .dataset import LabeledDataset


def periodogram(series: np.ndarray) -> np.ndarray:
    """Magnitudes of the discrete Fourier transform at indices 1..floor(m/2).

    Unnormalized: entry j equals sqrt(o_j^2 + q_j^2) for the plain DFT sum,
    with no 1/m scaling. Output length is floor(m/2).
    """
    x = np.asarray(series, dtype=np.float64)
    m = x.shape[-1]
    spec = np.fft.rfft(x, axis=-1)
    return np.abs(spec[..., 1 : m // 2 + 1])


def derivative(series: np.ndarray) -> np.ndarray:
    """First differences: out[j] = series[j+1] - series[j]."""
    return np.diff(np.asarray(series, dtype=np.float64), axis=-1)


def schwert_lag(m: int) -> int:
    """AR lag order for series length m: round(12 * (m/100)^0.25), clamped
    to [1, m-2]. Rounding is half-away-from-zero, not banker's."""
    raw = 12.0 * (m / 100.0) ** 0.25
    lag = math.floor(raw + 0.5)
    return max(1, min(lag, m - 2))


def burg_ar(series: np.ndarray, l: int) -> np.ndarray:
    """Order-l AR coefficients by Burg's reflection-coefficient recursion.

    The series is mean-centered first; the implicit intercept is discarded.
    Coefficients follow the prediction convention x_t ~ sum_k beta_k x_{t-k}.
    A constant (zero-variance) series yields the all-zero vector rather than
    an error, so degenerate rows never abort a dataset transform.

    Parameters
    ----------
    series : ndarray, shape (m,)
    l : int
        Lag order, 1 <= l <= m-2.
    """
    x = np.asarray(series, dtype=np.float64)
    m = x.shape[0]
    if not 1 <= l <= m - 2:
        raise ValueError(f"lag {l} outside [1, {m - 2}]")
    x = x - x.mean()
    coeffs = np.zeros(l, dtype=np.float64)
    fwd = x.copy()
    bwd = x.copy()
    for k in range(l):
        f = fwd[k + 1 :]
        b = bwd[k : m - 1]
        den = f @ f + b @ b
        if den <= 0.0:
            break
        rho = 2.0 * (f @ b) / den
        prev = coeffs[:k].copy()
        coeffs[:k] = prev - rho * prev[::-1]
        coeffs[k] = rho
        # f and b are views into fwd/bwd; materialize both updates before
        # writing back or the second update would read clobbered values.
        new_f = f - rho * b
        new_b = b - rho * f
        fwd[k + 1 :] = new_f
        bwd[k + 1 :] = new_b
    return coeffs


@dataclass(frozen=True)
class RepresentationSet:
    """The four representation matrices for one dataset.

    Attributes
    ----------
    original : ndarray, shape (n, m)
    periodogram : ndarray, shape (n, floor(m/2))
    derivative : ndarray, shape (n, m-1)
    autoregressive : ndarray, shape (n, lag)
    row_means : ndarray, shape (n,)
        Mean of each full original series.
    lag : int
        AR order used for the autoregressive matrix.
    """

    original: np.ndarray
    periodogram: np.ndarray
    derivative: np.ndarray
    autoregressive: np.ndarray
    row_means: np.ndarray
    lag: int
    _means: dict[Representation, np.ndarray] = field(repr=False, compare=False, default_factory=dict)

    def matrix(self, repr_id: Representation) -> np.ndarray:
        if repr_id is Representation.ORIGINAL:
            return self.original
        if repr_id is Representation.PERIODOGRAM:
            return self.periodogram
        if repr_id is Representation.DERIVATIVE:
            return self.derivative
        return self.autoregressive

    def width(self, repr_id: Representation) -> int:
        return self.matrix(repr_id).shape[1]

    def means(self, repr_id: Representation) -> np.ndarray:
        """Per-series mean of the full representation row (the mean axis the
        cmc aggregation counts crossings against)."""
        cached = self._means.get(repr_id)
        if cached is None:
            cached = self.matrix(repr_id).mean(axis=1)
            self._means[repr_id] = cached
        return cached


def representation_width(repr_id: Representation, m: int, lag: int) -> int:
    """Column count of a representation given the original length and lag."""
    if repr_id is Representation.ORIGINAL:
        return m
    if repr_id is Representation.PERIODOGRAM:
        return m // 2
    if repr_id is Representation.DERIVATIVE:
        return m - 1
    return lag


def build_representation_set(values: np.ndarray | LabeledDataset) -> RepresentationSet:
    """Compute all four representations for a dataset or a raw value matrix."""
    if isinstance(values, LabeledDataset):
        values = values.values
    x = np.asarray(values, dtype=np.float64)
    n, m = x.shape
    lag = schwert_lag(m)
    ar = np.empty((n, lag), dtype=np.float64)
    for i in range(n):
        ar[i] = burg_ar(x[i], lag)
    return RepresentationSet(
        original=x,
        periodogram=periodogram(x),
        derivative=derivative(x),
        autoregressive=ar,
        row_means=x.mean(axis=1),
        lag=lag,
    )
