"""Hilbert-space layout and physical couplings."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class SpaceSpec(BaseModel):
    """Composition of the chain Hilbert space.

    Ordering is fixed: the spin factors of sites 1..N come first, then the
    boson factors of sites 1..N. The first factor is the most significant
    digit of a basis index.
    """

    model_config = ConfigDict(frozen=True)

    n_sites: int = Field(ge=1, description="Number of chain sites N")
    spin_levels: int = Field(default=2, ge=2, description="2S+1 levels per site")
    boson_levels: int = Field(
        default=0, ge=0, description="Truncated phonon levels N_B per site (0 = no phonons)"
    )

    @property
    def spin(self) -> float:
        """Spin quantum number S."""
        return (self.spin_levels - 1) / 2

    @property
    def has_bosons(self) -> bool:
        return self.boson_levels > 0

    @property
    def spin_dim(self) -> int:
        return int(self.spin_levels**self.n_sites)

    @property
    def boson_dim(self) -> int:
        return int(max(self.boson_levels, 1) ** self.n_sites)

    @property
    def dim(self) -> int:
        """Total dimension spin_levels^N * max(N_B, 1)^N."""
        return self.spin_dim * self.boson_dim

    @property
    def shape(self) -> tuple[int, ...]:
        """Per-factor dimensions in global ordering."""
        spins = (self.spin_levels,) * self.n_sites
        if not self.has_bosons:
            return spins
        return spins + (self.boson_levels,) * self.n_sites

    def compose(self, digits: tuple[int, ...]) -> int:
        """Map per-factor digits (spins then bosons) to a basis index."""
        return int(np.ravel_multi_index(tuple(int(d) for d in digits), self.shape))

    def decompose(self, index: int) -> tuple[int, ...]:
        """Inverse of compose."""
        return tuple(int(d) for d in np.unravel_index(int(index), self.shape))

    def spin_only(self) -> "SpaceSpec":
        """The phononless space with the same chain."""
        return SpaceSpec(n_sites=self.n_sites, spin_levels=self.spin_levels, boson_levels=0)

    def with_bosons(self, boson_levels: int) -> "SpaceSpec":
        return SpaceSpec(
            n_sites=self.n_sites, spin_levels=self.spin_levels, boson_levels=boson_levels
        )


class ModelParams(BaseModel):
    """Couplings of the tilted spin chain and its local Holstein phonons.

    Units: J = 1 sets the energy scale, hbar = 1.
    """

    model_config = ConfigDict(frozen=True)

    J: float = Field(default=1.0, gt=0, description="Exchange coupling (J > 0 antiferromagnetic)")
    Delta: Optional[float] = Field(
        default=None, description="zz-anisotropy; defaults to J (isotropic Heisenberg)"
    )
    W: float = Field(default=0.0, description="Tilt gradient per site")
    omega0: float = Field(default=1.0, description="Phonon energy")
    lambda_perp: float = Field(default=0.0, description="Spin-flip spin-phonon coupling")
    lambda_par: float = Field(default=0.0, description="Longitudinal spin-phonon coupling")
    spec: SpaceSpec = Field(description="Hilbert space the operators are built on")

    @model_validator(mode="after")
    def check_phonon_energy(self) -> "ModelParams":
        if self.spec.boson_levels >= 2 and self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive with phonons, got {self.omega0}")
        return self

    @property
    def zz(self) -> float:
        """Effective zz coupling (Delta, or J when unset)."""
        return self.J if self.Delta is None else self.Delta

    @property
    def g(self) -> float:
        """Polaron shift lambda_par^2 / omega0."""
        if self.omega0 == 0:
            return 0.0
        return self.lambda_par**2 / self.omega0

    def replace(self, **changes: object) -> "ModelParams":
        """Copy with some fields changed, re-validated."""
        data = self.model_dump()
        data["spec"] = self.spec
        data.update(changes)
        return ModelParams.model_validate(data)
