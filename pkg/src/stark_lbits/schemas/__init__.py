"""Pydantic schemas for the Stark l-bit toolkit."""

from stark_lbits.schemas.experiment import (
    SCHEMA_VERSION,
    ExperimentConfig,
    GatesConfig,
    GridConfig,
    LbitConfig,
    MethodConfig,
    ModelConfig,
    OutputFile,
    RunManifest,
    SweepConfig,
)
from stark_lbits.schemas.gates import (
    CnotReport,
    ErrorInjection,
    GateReport,
    GateSpec,
    RecoveryReport,
    RotationTrace,
)
from stark_lbits.schemas.model import ModelParams, SpaceSpec
from stark_lbits.schemas.results import (
    CorrelationSeries,
    IdentityCheck,
    IdentityReport,
    LbitSeed,
    LocalityProfile,
    SpectrumSeries,
)

__all__ = [
    "SCHEMA_VERSION",
    "SpaceSpec",
    "ModelParams",
    "ModelConfig",
    "GridConfig",
    "MethodConfig",
    "LbitConfig",
    "SweepConfig",
    "GatesConfig",
    "ExperimentConfig",
    "OutputFile",
    "RunManifest",
    "IdentityCheck",
    "IdentityReport",
    "CorrelationSeries",
    "SpectrumSeries",
    "LocalityProfile",
    "LbitSeed",
    "GateSpec",
    "GateReport",
    "RotationTrace",
    "CnotReport",
    "ErrorInjection",
    "RecoveryReport",
]
