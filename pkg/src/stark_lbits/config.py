"""Configuration management for the Stark l-bit toolkit."""

import json
from pathlib import Path
from typing import Literal, Union

from dotenv import load_dotenv
from pydantic import ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings

# Load environment variables
load_dotenv()


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application Configuration
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="INFO", alias="LOG_LEVEL"
    )

    # Numerical backends
    dense_ceiling: int = Field(
        default=20_000,
        alias="DENSE_CEILING",
        description="Largest Hilbert-space dimension handled by full diagonalization",
    )
    krylov_subspace_dim: int = Field(default=30, alias="KRYLOV_SUBSPACE_DIM")
    krylov_dt: float = Field(default=0.05, alias="KRYLOV_DT")
    krylov_tolerance: float = Field(default=1e-9, alias="KRYLOV_TOLERANCE")
    krylov_max_substeps: int = Field(default=200_000, alias="KRYLOV_MAX_SUBSTEPS")
    sparse_prune: float = Field(default=1e-15, alias="SPARSE_PRUNE")
    hermitian_tolerance: float = Field(default=1e-12, alias="HERMITIAN_TOLERANCE")

    # Parallelism
    enable_parallel_samples: bool = Field(default=True, alias="ENABLE_PARALLEL_SAMPLES")
    max_workers: int = Field(default=4, alias="MAX_WORKERS")

    # Identity checks
    identity_tolerance: float = Field(default=1e-10, alias="IDENTITY_TOLERANCE")
    verify_sites: Union[str, list[int]] = Field(
        default="4,6",
        alias="VERIFY_SITES",
        description="Chain lengths swept by the eigenoperator checks of the verify experiment",
    )

    @field_validator("verify_sites", mode="after")
    @classmethod
    def parse_verify_sites(cls, v: Union[str, list[int]]) -> list[int]:
        """Parse chain lengths from comma-separated string or JSON list."""
        if isinstance(v, list):
            return v
        if v.strip().startswith("["):
            try:
                return [int(n) for n in json.loads(v)]
            except json.JSONDecodeError:
                pass
        return [int(n.strip()) for n in v.split(",") if n.strip()]

    # Paths
    output_root: Path = Field(default_factory=lambda: Path.cwd() / "runs", alias="OUTPUT_ROOT")
    data_dir: Path = Field(default_factory=lambda: Path(__file__).parent / "data")

    model_config = ConfigDict(
        env_file=".env",
        case_sensitive=False,
        populate_by_name=True,
    )


# Global settings instance
settings = Settings()
