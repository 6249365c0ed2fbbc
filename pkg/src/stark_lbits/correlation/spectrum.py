"""Discrete Fourier spectra of correlation series."""

import logging
from typing import Literal

import numpy as np
from scipy.signal import get_window

from stark_lbits.correlation.fluctuation import GridError
from stark_lbits.schemas.results import CorrelationSeries, SpectrumSeries

logger = logging.getLogger(__name__)

Window = Literal["none", "hann"]


def grid_step(times: np.ndarray, rtol: float = 1e-6) -> float:
    """Spacing of a uniform grid.

    Raises:
        GridError: Fewer than two points or non-uniform spacing
    """
    if times.size < 2:
        raise GridError("A spectrum needs at least two time points")
    steps = np.diff(times)
    dt = float(steps.mean())
    if np.max(np.abs(steps - dt)) > rtol * dt:
        raise GridError("Time grid is not uniform")
    return dt


def spectrum(series: CorrelationSeries, window: Window = "none") -> SpectrumSeries:
    """|DFT| * dt of a uniformly sampled series on an angular-frequency axis.

    The axis is 2 pi fftfreq(n, dt), shifted to ascending order; its spacing is
    one DFT bin.
    """
    dt = grid_step(series.times)
    n = series.times.size
    values = series.values
    if window == "hann":
        values = values * get_window("hann", n)
    elif window != "none":
        raise ValueError(f"Unknown window: {window!r}")

    transform = np.fft.fftshift(np.fft.fft(values)) * dt
    freqs = np.fft.fftshift(2 * np.pi * np.fft.fftfreq(n, d=dt))
    return SpectrumSeries(
        frequencies=freqs,
        magnitudes=np.abs(transform),
        window=window,
        bin_width=2 * np.pi / (n * dt),
    )


def dominant_frequency(spec: SpectrumSeries, exclude_dc: bool = False) -> float:
    """Frequency of the largest magnitude among omega >= 0.

    With exclude_dc the zero bin is skipped, for series with a static offset.
    """
    mask = spec.frequencies >= -0.5 * spec.bin_width
    if exclude_dc:
        mask &= np.abs(spec.frequencies) > 0.5 * spec.bin_width
    if not np.any(mask):
        raise GridError("No non-negative frequency bins to search")
    idx = np.nonzero(mask)[0]
    best = idx[np.argmax(spec.magnitudes[idx])]
    return float(spec.frequencies[best])
