"""Experiment runners dispatched by ExperimentConfig.experiment."""

from pathlib import Path
from typing import Callable

from stark_lbits.experiments.autocorr import compute_autocorr, run_autocorr, run_spectrum, summarize
from stark_lbits.experiments.base import ExperimentError, ExperimentOutcome, center_site
from stark_lbits.experiments.gates import run_gates
from stark_lbits.experiments.lbit import run_lbit
from stark_lbits.experiments.sweep import SUMMARY_COLUMNS, run_sweep_points
from stark_lbits.experiments.verify import eigenoperator_report, run_verify, spin32_report
from stark_lbits.schemas.experiment import ExperimentConfig

EXPERIMENTS: dict[str, Callable[[ExperimentConfig, Path], ExperimentOutcome]] = {
    "autocorr": run_autocorr,
    "spectrum": run_spectrum,
    "lbit": run_lbit,
    "gates": run_gates,
    "verify": run_verify,
}

__all__ = [
    "EXPERIMENTS",
    "SUMMARY_COLUMNS",
    "ExperimentError",
    "ExperimentOutcome",
    "center_site",
    "compute_autocorr",
    "eigenoperator_report",
    "run_autocorr",
    "run_gates",
    "run_lbit",
    "run_spectrum",
    "run_sweep_points",
    "run_verify",
    "spin32_report",
    "summarize",
]
