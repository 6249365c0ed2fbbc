"""Experiment configuration and run manifests."""

import hashlib
import json
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from stark_lbits.schemas.model import ModelParams, SpaceSpec

ExperimentKind = Literal["autocorr", "lbit", "spectrum", "gates", "sweep", "verify"]
SweepAxis = Literal["W", "omega0", "lambda0", "N", "N_B"]

# bump when the layout of meta.json / manifest.json changes
SCHEMA_VERSION = 1


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModelConfig(_Strict):
    """Chain, phonon and coupling parameters as written in a config file."""

    n_sites: int = Field(ge=1, description="Chain length N")
    spin_levels: int = Field(default=2, ge=2, description="2S+1")
    boson_levels: int = Field(default=0, ge=0, description="Phonon levels N_B per site")
    J: float = Field(default=1.0, gt=0)
    Delta: Optional[float] = Field(default=None)
    W: float = Field(default=0.0)
    omega0: float = Field(default=1.0)
    lambda0: Optional[float] = Field(
        default=None, description="Shortcut setting lambda_perp = lambda_par = lambda0"
    )
    lambda_perp: float = Field(default=0.0)
    lambda_par: float = Field(default=0.0)

    @model_validator(mode="after")
    def check_lambda_shortcut(self) -> "ModelConfig":
        if self.lambda0 is not None and (self.lambda_perp != 0.0 or self.lambda_par != 0.0):
            raise ValueError("Give either lambda0 or lambda_perp/lambda_par, not both")
        return self

    def to_params(self) -> ModelParams:
        perp = self.lambda0 if self.lambda0 is not None else self.lambda_perp
        par = self.lambda0 if self.lambda0 is not None else self.lambda_par
        spec = SpaceSpec(
            n_sites=self.n_sites, spin_levels=self.spin_levels, boson_levels=self.boson_levels
        )
        return ModelParams(
            J=self.J,
            Delta=self.Delta,
            W=self.W,
            omega0=self.omega0,
            lambda_perp=perp,
            lambda_par=par,
            spec=spec,
        )

    def with_axis(self, axis: SweepAxis, value: float) -> "ModelConfig":
        """Copy with one sweep axis set to value."""
        data = self.model_dump()
        if axis == "N":
            data["n_sites"] = int(value)
        elif axis == "N_B":
            data["boson_levels"] = int(value)
        elif axis == "lambda0":
            data.update(lambda0=value, lambda_perp=0.0, lambda_par=0.0)
        else:
            data[axis] = value
        return ModelConfig.model_validate(data)


class GridConfig(_Strict):
    dt: float = Field(default=0.02, gt=0, description="Time step (units 1/J)")
    t_max: float = Field(default=20.0, gt=0, description="Final time (units 1/J)")


class MethodConfig(_Strict):
    """How fluctuation functions are evaluated."""

    backend: Literal["exact", "typicality"] = Field(default="exact")
    samples: int = Field(default=16, ge=1, description="Typicality sample count R")
    seed: int = Field(default=0, ge=0, description="Master RNG seed")


class LbitConfig(_Strict):
    seeds: list[int] = Field(default_factory=lambda: [1], description="Seed families k to filter")
    site: Optional[int] = Field(default=None, description="Seed site j (default: chain centre)")
    filter_horizon: float = Field(default=100.0, gt=0, description="Time-average half-window T")
    dump_tau: bool = Field(default=False, description="Write tau matrices as binary files")

    @field_validator("seeds")
    @classmethod
    def check_seeds(cls, v: list[int]) -> list[int]:
        if not v or any(k not in (1, 2, 3, 4) for k in v):
            raise ValueError(f"seeds must be a non-empty subset of 1..4, got {v}")
        return v


class SweepConfig(_Strict):
    axis: SweepAxis
    values: list[float] = Field(min_length=1)


class GatesConfig(_Strict):
    """Gate calibration and error-recovery settings (phononless chain)."""

    site: Optional[int] = Field(default=None, description="Control site j (default: 2)")
    calibration_t_max: float = Field(default=6.283185307179586, gt=0)
    calibration_dt: float = Field(default=0.01, gt=0)
    error_amplitude: float = Field(default=0.2)
    error_window: tuple[float, float] = Field(default=(5.0, 6.0))
    relax: Literal["effective", "system"] = Field(
        default="system", description="Hamiltonian after the error window"
    )
    recovery_t_max: float = Field(default=20.0, gt=0)
    recovery_dt: float = Field(default=0.05, gt=0)
    tilts: list[float] = Field(default_factory=lambda: [5.0, 10.0, 20.0])

    @model_validator(mode="after")
    def check_window(self) -> "GatesConfig":
        t0, t1 = self.error_window
        if not 0 <= t0 <= t1 <= self.recovery_t_max:
            raise ValueError(
                f"error_window {self.error_window} must lie inside [0, {self.recovery_t_max}]"
            )
        return self


class ExperimentConfig(_Strict):
    """One reproducible run. Unknown keys are rejected."""

    experiment: ExperimentKind
    name: Optional[str] = Field(default=None, description="Preset or user label")
    model: ModelConfig
    grid: GridConfig = Field(default_factory=GridConfig)
    method: MethodConfig = Field(default_factory=MethodConfig)
    output_dir: Optional[Path] = Field(default=None)
    window: Literal["none", "hann"] = Field(default="none", description="DFT window for spectra")
    lbit: LbitConfig = Field(default_factory=LbitConfig)
    sweep: Optional[SweepConfig] = Field(default=None)
    sweep_experiment: Literal["autocorr", "spectrum"] = Field(
        default="autocorr", description="Experiment run at each sweep point"
    )
    gates: GatesConfig = Field(default_factory=GatesConfig)

    @model_validator(mode="after")
    def check_consistency(self) -> "ExperimentConfig":
        if self.grid.t_max <= self.grid.dt:
            raise ValueError(f"t_max ({self.grid.t_max}) must exceed dt ({self.grid.dt})")
        if self.experiment == "sweep" and self.sweep is None:
            raise ValueError("A sweep experiment needs a 'sweep' section")
        params = self.model.to_params()
        n = params.spec.n_sites
        if self.experiment in ("autocorr", "spectrum", "sweep") and n < 3:
            raise ValueError("Auto-correlation runs need at least three sites")
        if self.experiment == "lbit":
            j = self.lbit.site if self.lbit.site is not None else (n + 1) // 2
            if not 2 <= j <= n - 1:
                raise ValueError(f"l-bit seed site {j} must be interior to 1..{n}")
        if self.experiment == "gates":
            j = self.gates.site if self.gates.site is not None else 2
            if j < 2 or j + 2 > n:
                raise ValueError(f"Gate control site {j} needs sites {j - 1}..{j + 2} inside 1..{n}")
        if self.sweep is not None:
            for value in self.sweep.values:
                self.model.with_axis(self.sweep.axis, value).to_params()
        return self

    def params(self) -> ModelParams:
        return self.model.to_params()

    def for_point(self, value: float) -> "ExperimentConfig":
        """Single-point config of a sweep."""
        if self.sweep is None:
            raise ValueError("Not a sweep config")
        data = self.model_dump(exclude={"sweep", "output_dir"})
        data["experiment"] = self.sweep_experiment
        data["model"] = self.model.with_axis(self.sweep.axis, value).model_dump()
        return ExperimentConfig.model_validate(data)


class OutputFile(BaseModel):
    path: str = Field(description="Path relative to the run directory")
    sha256: str
    size: int = Field(ge=0)


class RunManifest(BaseModel):
    """Record of one run: config echo, versions, seed and hashed outputs."""

    schema_version: int = Field(default=SCHEMA_VERSION)
    code_version: str
    config: dict[str, Any]
    seed: Optional[int] = None
    wall_time: float = Field(ge=0.0, description="Seconds; excluded from the fingerprint")
    files: list[OutputFile] = Field(default_factory=list)
    failures: dict[str, str] = Field(default_factory=dict, description="Sweep point -> error")

    def fingerprint(self) -> str:
        """sha256 of everything except the wall time."""
        payload = self.model_dump(mode="json", exclude={"wall_time"})
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()
