"""Shared pieces of the experiment runners."""

from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from stark_lbits.hilbert import SparseOperator
from stark_lbits.propagation import DenseCeilingError, EigenDecomposition, dense_eig
from stark_lbits.schemas.experiment import ExperimentConfig


class ExperimentError(RuntimeError):
    """Raised when a backend fails inside an experiment."""


class ExperimentOutcome(BaseModel):
    """Files written by one experiment and the scalars a sweep tabulates."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    files: list[Path] = Field(default_factory=list)
    metrics: dict[str, Any] = Field(default_factory=dict)


def center_site(n_sites: int) -> int:
    """r/2 with r = N + 1 (rounded down for even N)."""
    return (n_sites + 1) // 2


def config_echo(config: ExperimentConfig) -> dict[str, Any]:
    """JSON-ready config without the output location."""
    return config.model_dump(mode="json", exclude={"output_dir"})


def diagonalize(h: SparseOperator, what: str, hint: Optional[str] = None) -> EigenDecomposition:
    """dense_eig with a message naming the experiment step.

    Raises:
        ExperimentError: Dimension above the dense ceiling
    """
    try:
        return dense_eig(h)
    except DenseCeilingError as e:
        extra = f" ({hint})" if hint else ""
        raise ExperimentError(f"{what}: {e}{extra}") from e
