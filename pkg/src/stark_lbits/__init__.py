"""Stark many-body localized spin chains with local phonons."""

__version__ = "0.1.0"

from stark_lbits.runner import ExperimentRunner

__all__ = ["ExperimentRunner"]
