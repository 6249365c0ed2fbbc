"""Gate schedules, error injections and their reports."""

from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from stark_lbits.schemas.model import ModelParams
from stark_lbits.schemas.results import CorrelationSeries, IdentityReport

GateKind = Literal["rot_z", "ising", "rot_x", "cnot"]


class GateSpec(BaseModel):
    """One gate of a schedule."""

    kind: GateKind = Field(description="Gate family")
    sites: list[int] = Field(default_factory=list, description="Sites j the gate addresses")
    duration: float = Field(ge=0.0, description="Gate time t (units 1/J)")
    params: Optional[ModelParams] = Field(default=None, description="Model snapshot")

    @model_validator(mode="after")
    def check_sites(self) -> "GateSpec":
        if self.kind == "ising":
            if len(self.sites) != 2 or self.sites[1] != self.sites[0] + 1:
                raise ValueError(f"Ising gate needs two adjacent sites, got {self.sites}")
            if self.params is not None:
                n = self.params.spec.n_sites
                if self.sites[0] < 2 or self.sites[1] > n - 1:
                    raise ValueError(
                        f"Ising gate sites {self.sites} need both neighbours inside 1..{n}"
                    )
        return self


class GateReport(BaseModel):
    """Unitary of a gate with the identities it was checked against."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    gate: GateSpec
    unitary: np.ndarray = Field(description="Dense unitary on the spin space")
    checks: IdentityReport = Field(default_factory=IdentityReport)
    meta: dict[str, Any] = Field(default_factory=dict)

    @property
    def unitarity_residual(self) -> float:
        u = self.unitary
        return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


class RotationTrace(BaseModel):
    """Overlaps of the rotated charge with Sigma^y and with itself over time."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    times: np.ndarray
    overlap_y: np.ndarray = Field(description="hs(Sigma^y, R Q2 R+) / norms")
    overlap_q: np.ndarray = Field(description="hs(Q2, R Q2 R+) / norms")
    initial_slope: float = Field(description="Analytic d/dt overlap_y at t = 0")
    calibrated_time: float = Field(description="Time of the first maximum of |overlap_y|")


class CnotReport(BaseModel):
    """Executed CNOT schedule on the two-l-bit logical space."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    schedule: list[GateSpec]
    unitary: np.ndarray
    sector_labels: list[tuple[float, float]] = Field(
        description="Joint (Q2(j), Q2(j+1)) eigenvalues labelling the logical sectors"
    )
    transitions: np.ndarray = Field(description="T[a, b] = ||P_a U P_b||^2 / ||P_b||^2")
    leakage: float = Field(ge=0.0, description="Mean weight leaving the logical sectors")
    logical_dim: int = Field(description="Number of non-empty joint sectors")
    unitarity_residual: float = Field(ge=0.0)
    decomposition: str = Field(description="Textual gate sequence")
    meta: dict[str, Any] = Field(default_factory=dict)


class ErrorInjection(BaseModel):
    """Coherent error eps * E switched on during [t0, t1]."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    error_op: Any = Field(description="SparseOperator E on the spin space")
    amplitude: float = Field(description="eps")
    window: tuple[float, float] = Field(description="[t0, t1]")
    label: str = Field(default="E")
    error_class: Literal["generic", "resonant"] = Field(
        description="resonant when [M, E] = 0, generic otherwise"
    )
    commutator_norm: float = Field(ge=0.0, description="||[M, E]||_F")

    @model_validator(mode="after")
    def check_window(self) -> "ErrorInjection":
        t0, t1 = self.window
        if t1 < t0:
            raise ValueError(f"Error window must satisfy t0 <= t1, got {self.window}")
        return self


class RecoveryReport(BaseModel):
    """Phase-corrected overlap of A_2 under an error window, against its eps = 0 baseline."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    injection: ErrorInjection
    overlap: CorrelationSeries = Field(description="c(t)")
    baseline: CorrelationSeries = Field(description="c_0(t), same schedule with eps = 0")
    min_before: float
    min_during: float
    window_end: float = Field(description="Relative magnitude at the last grid point <= t1")
    plateau: float = Field(description="Mean relative magnitude over the last fifth of the grid")
    recovered: bool = Field(description="Plateau rose above the window minimum and the t1 value")
    degradation: float = Field(description="max_{t >= t0} (|c_0| - |c|) per unit window time")
    base: Literal["effective", "system"] = Field(default="effective")
    relax: Literal["effective", "system"] = Field(default="system")

    @property
    def relative(self) -> np.ndarray:
        """1 - (|c_0(t)| - |c(t)|)."""
        return 1.0 - (np.abs(self.baseline.values) - np.abs(self.overlap.values))
