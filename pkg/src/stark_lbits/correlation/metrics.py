"""Scalar summaries used to compare oscillation robustness across runs."""

import numpy as np
from scipy.signal import find_peaks
from scipy.stats import entropy

from stark_lbits.schemas.results import CorrelationSeries, SpectrumSeries


def envelope_amplitude(
    series: CorrelationSeries, start_fraction: float = 0.5, end_fraction: float = 1.0
) -> float:
    """Mean of the local maxima of |F| inside a fraction of the time window.

    Falls back to max |F| when the window holds no interior maximum.
    """
    if not 0.0 <= start_fraction < end_fraction <= 1.0:
        raise ValueError(f"Invalid window fractions [{start_fraction}, {end_fraction}]")
    t = series.times
    span = t[-1] - t[0]
    lo = t[0] + start_fraction * span
    hi = t[0] + end_fraction * span
    mask = (t >= lo - 1e-12) & (t <= hi + 1e-12)
    amp = np.abs(series.values[mask])
    if amp.size == 0:
        return 0.0
    peaks, _ = find_peaks(amp)
    if peaks.size == 0:
        return float(amp.max())
    return float(amp[peaks].mean())


def spectral_entropy(spec: SpectrumSeries) -> float:
    """Shannon entropy (nats) of the normalized DFT magnitudes."""
    mags = np.asarray(spec.magnitudes, dtype=np.float64)
    if mags.sum() <= 0:
        return 0.0
    return float(entropy(mags))
