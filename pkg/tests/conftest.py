"""Pytest configuration and fixtures."""

import pytest
from pathlib import Path

from stark_lbits.schemas.experiment import ExperimentConfig
from stark_lbits.schemas.model import ModelParams, SpaceSpec


@pytest.fixture
def spin_chain() -> SpaceSpec:
    """Phononless spin-1/2 chain of five sites."""
    return SpaceSpec(n_sites=5)


@pytest.fixture
def phonon_chain() -> SpaceSpec:
    """Three spin-1/2 sites with two phonon levels each (dim 64)."""
    return SpaceSpec(n_sites=3, boson_levels=2)


@pytest.fixture
def tilted_params(spin_chain: SpaceSpec) -> ModelParams:
    """Strongly tilted XXZ chain without phonons."""
    return ModelParams(J=1.0, W=10.0, omega0=3.0, lambda_perp=1.0, lambda_par=1.0, spec=spin_chain)


@pytest.fixture
def phonon_params(phonon_chain: SpaceSpec) -> ModelParams:
    """Tilted chain coupled to local phonons (lambda0 = J, omega0 = 3J)."""
    return ModelParams(J=1.0, W=10.0, omega0=3.0, lambda_perp=1.0, lambda_par=1.0, spec=phonon_chain)


@pytest.fixture
def small_autocorr_config(tmp_path: Path) -> ExperimentConfig:
    """Exact auto-correlation on a chain small enough for a unit test."""
    return ExperimentConfig.model_validate(
        {
            "experiment": "autocorr",
            "name": "small_autocorr",
            "model": {"n_sites": 3, "boson_levels": 2, "W": 6.0, "omega0": 3.0, "lambda0": 1.0},
            "grid": {"dt": 0.05, "t_max": 5.0},
            "method": {"backend": "exact"},
            "output_dir": str(tmp_path / "autocorr"),
        }
    )
