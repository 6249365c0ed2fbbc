"""Result records produced by the numerical modules."""

from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class IdentityCheck(BaseModel):
    """One residual of an algebraic identity."""

    name: str = Field(description="Human-readable identity label")
    residual: float = Field(ge=0.0, description="Frobenius (or scalar) residual")
    tolerance: float = Field(gt=0.0)
    passed: bool = Field(default=False)

    @model_validator(mode="after")
    def set_passed(self) -> "IdentityCheck":
        self.passed = bool(self.residual < self.tolerance)
        return self


class IdentityReport(BaseModel):
    """Collection of identity residuals for one model."""

    checks: list[IdentityCheck] = Field(default_factory=list)
    notes: dict[str, Any] = Field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, residual: float, tolerance: float) -> IdentityCheck:
        check = IdentityCheck(name=name, residual=float(residual), tolerance=tolerance)
        self.checks.append(check)
        return check

    def extend(self, other: "IdentityReport") -> None:
        self.checks.extend(other.checks)
        self.notes.update(other.notes)

    def residual(self, name: str) -> float:
        for check in self.checks:
            if check.name == name:
                return check.residual
        raise KeyError(name)


class CorrelationSeries(BaseModel):
    """F_QB(t) on a time grid."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    times: np.ndarray = Field(description="Strictly increasing times (units 1/J)")
    values: np.ndarray = Field(description="Complex correlation values")
    method: Literal["exact", "typicality", "overlap"] = Field(default="exact")
    samples: Optional[int] = Field(default=None, description="Typicality sample count R")
    seed: Optional[int] = Field(default=None)
    stderr: Optional[np.ndarray] = Field(default=None, description="Standard error per time")
    per_sample: Optional[np.ndarray] = Field(
        default=None, description="Typicality estimates, shape (R, len(times))"
    )
    meta: dict[str, Any] = Field(default_factory=dict)

    @field_validator("times", mode="before")
    @classmethod
    def as_real(cls, v: Any) -> np.ndarray:
        return np.asarray(v, dtype=np.float64)

    @field_validator("values", mode="before")
    @classmethod
    def as_complex(cls, v: Any) -> np.ndarray:
        return np.asarray(v, dtype=np.complex128)

    @model_validator(mode="after")
    def check_grid(self) -> "CorrelationSeries":
        if self.times.ndim != 1 or self.values.shape != self.times.shape:
            raise ValueError(
                f"times and values must be 1-D of equal length, got {self.times.shape} and {self.values.shape}"
            )
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        return self


class SpectrumSeries(BaseModel):
    """Magnitude of the discrete Fourier transform of a correlation series."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    frequencies: np.ndarray = Field(description="Angular frequencies (units of J), ascending")
    magnitudes: np.ndarray = Field(description="|DFT| * dt, non-negative")
    window: Literal["none", "hann"] = Field(default="none")
    bin_width: float = Field(gt=0.0, description="Angular frequency spacing")


class LocalityProfile(BaseModel):
    """Per-site weight of an operator expanded in a product operator basis."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    weights: np.ndarray = Field(description="Site weights (index 0 = site 1), summing to 1")
    normalization: float = Field(ge=0.0, description="Total non-identity weight")
    identity_weight: float = Field(ge=0.0, description="Weight of the identity string")
    method: Literal["phonon-traced", "spin-only"] = Field(default="phonon-traced")

    def weight(self, site: int) -> float:
        """Weight of a 1-based site."""
        return float(self.weights[site - 1])

    @property
    def peak_site(self) -> int:
        return int(np.argmax(self.weights)) + 1


class LbitSeed(BaseModel):
    """Analytic dynamical l-bit A_k(j) with its eigenoperator frequency."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: int = Field(ge=1, le=4, description="Seed family index")
    site: int = Field(ge=2, description="Interior site j")
    op: Any = Field(description="SparseOperator supported on sites j-1, j, j+1")
    freq: float = Field(description="omega_k(j) in units of J")
    sector: bool = Field(default=False, description="Built on the spin-3/2 pseudo-spin space")
