"""Fluctuation functions, their spectra and summary metrics."""

from stark_lbits.correlation.fluctuation import GridError, check_grid, fluctuation_exact, make_grid
from stark_lbits.correlation.metrics import envelope_amplitude, spectral_entropy
from stark_lbits.correlation.spectrum import dominant_frequency, grid_step, spectrum
from stark_lbits.correlation.typicality import (
    fluctuation_typicality,
    fluctuation_typicality_many,
    random_state,
)

__all__ = [
    "GridError",
    "check_grid",
    "dominant_frequency",
    "envelope_amplitude",
    "fluctuation_exact",
    "fluctuation_typicality",
    "fluctuation_typicality_many",
    "grid_step",
    "make_grid",
    "random_state",
    "spectral_entropy",
    "spectrum",
]
