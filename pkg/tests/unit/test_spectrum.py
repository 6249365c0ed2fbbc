"""Unit tests for spectra and the scalar oscillation metrics."""

import numpy as np
import pytest

from stark_lbits.correlation import (
    GridError,
    dominant_frequency,
    envelope_amplitude,
    make_grid,
    spectral_entropy,
    spectrum,
)
from stark_lbits.schemas.results import CorrelationSeries


def _series(values_fn, dt: float = 0.05, t_max: float = 50.0) -> CorrelationSeries:
    times = make_grid(dt, t_max)
    return CorrelationSeries(times=times, values=values_fn(times))


def test_bin_width():
    series = _series(np.cos, dt=0.05, t_max=50.0)
    spec = spectrum(series)
    assert spec.bin_width == pytest.approx(2 * np.pi / (series.times.size * 0.05))
    assert np.all(np.diff(spec.frequencies) > 0)


def test_cosine_peak_within_one_bin():
    spec = spectrum(_series(lambda t: np.cos(2.0 * t)))
    assert abs(dominant_frequency(spec) - 2.0) <= spec.bin_width


def test_positive_rotation_peaks_at_positive_frequency():
    spec = spectrum(_series(lambda t: np.exp(3.0j * t)))
    peak = spec.frequencies[np.argmax(spec.magnitudes)]
    assert abs(peak - 3.0) <= spec.bin_width


def test_exclude_dc():
    spec = spectrum(_series(lambda t: 1.0 + 0.1 * np.cos(3.0 * t)))
    assert dominant_frequency(spec) == pytest.approx(0.0, abs=spec.bin_width)
    assert abs(dominant_frequency(spec, exclude_dc=True) - 3.0) <= spec.bin_width


def test_hann_window():
    series = _series(lambda t: np.cos(2.3 * t))
    plain = spectrum(series)
    hann = spectrum(series, window="hann")
    assert hann.window == "hann"
    assert np.all(hann.magnitudes >= 0)
    # leakage far from the line drops with the window
    far = np.abs(plain.frequencies - 2.3) > 2.0
    assert hann.magnitudes[far].max() < plain.magnitudes[far].max()


def test_non_uniform_grid_rejected():
    series = CorrelationSeries(times=[0.0, 0.1, 0.3], values=[1.0, 0.5, 0.2])
    with pytest.raises(GridError):
        spectrum(series)


def test_unknown_window_rejected():
    with pytest.raises(ValueError):
        spectrum(_series(np.cos), window="blackman")  # type: ignore[arg-type]


class TestMetrics:
    """Tests for envelope_amplitude and spectral_entropy."""

    def test_envelope_of_steady_oscillation(self):
        series = _series(lambda t: np.cos(2.0 * t), dt=0.01, t_max=20.0)
        assert envelope_amplitude(series) == pytest.approx(1.0, abs=1e-3)

    def test_envelope_of_decaying_oscillation(self):
        series = _series(lambda t: np.exp(-0.1 * t) * np.cos(2.0 * t), dt=0.01, t_max=20.0)
        first = envelope_amplitude(series, 0.0, 0.5)
        second = envelope_amplitude(series, 0.5, 1.0)
        assert second < first
        assert second / first == pytest.approx(np.exp(-1.0), rel=0.1)

    def test_envelope_without_maxima_falls_back_to_max(self):
        series = _series(lambda t: 1.0 + 0.0 * t, dt=0.1, t_max=1.0)
        assert envelope_amplitude(series) == pytest.approx(1.0)

    def test_envelope_rejects_bad_window(self):
        with pytest.raises(ValueError):
            envelope_amplitude(_series(np.cos), 0.6, 0.4)

    def test_entropy_orders_tone_below_noise(self):
        rng = np.random.default_rng(0)
        tone = spectrum(_series(lambda t: np.cos(2.0 * t)))
        noise = spectrum(_series(lambda t: rng.standard_normal(t.size)))
        assert spectral_entropy(tone) < spectral_entropy(noise)

    def test_entropy_of_zero_signal(self):
        spec = spectrum(_series(lambda t: 0.0 * t))
        assert spectral_entropy(spec) == 0.0
