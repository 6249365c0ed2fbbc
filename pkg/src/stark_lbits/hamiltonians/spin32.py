"""Spin-3/2 chains restricted to the (|3/2>, |-1/2>) pseudo-spin sector."""

import logging

import numpy as np

from stark_lbits.hamiltonians.builders import ModelSpecError, build_effective
from stark_lbits.hilbert import SparseOperator, spin_product
from stark_lbits.schemas.model import ModelParams, SpaceSpec

logger = logging.getLogger(__name__)

# positions of m = 3/2 and m = -1/2 in the descending spin-3/2 basis
SECTOR_LEVELS = (0, 2)

PAULI_Z = np.diag([1.0, -1.0]).astype(np.complex128)


def _require_spin32(params: ModelParams) -> None:
    if params.spec.spin_levels != 4:
        raise ModelSpecError(
            f"Pseudo-spin sector needs spin_levels = 4, got {params.spec.spin_levels}"
        )


def sector_space(params: ModelParams) -> SpaceSpec:
    """The 2^N pseudo-spin-1/2 space of the sector."""
    return SpaceSpec(n_sites=params.spec.n_sites, spin_levels=2, boson_levels=0)


def sector_indices(params: ModelParams) -> np.ndarray:
    """Indices of the sector states inside the phononless spin-3/2 space.

    Ordered so that pseudo-spin sigma = +1 (m = 3/2) maps to local level 0
    and sigma = -1 (m = -1/2) to level 1, preserving the chain ordering.
    """
    _require_spin32(params)
    n = params.spec.n_sites
    pseudo = np.array(np.unravel_index(np.arange(2**n), (2,) * n))
    levels = np.asarray(SECTOR_LEVELS)[pseudo]
    return np.ravel_multi_index(tuple(levels), (4,) * n)


def sector_degrees(n_sites: int) -> np.ndarray:
    """Number of bonds touching each site under open boundaries."""
    deg = np.full(n_sites, 2)
    deg[0] -= 1
    deg[-1] -= 1
    return np.clip(deg, 0, None)


def sector_fields(params: ModelParams) -> np.ndarray:
    """Longitudinal pseudo-spin field W j - g + Delta deg_j / 2 per site."""
    n = params.spec.n_sites
    j = np.arange(1, n + 1)
    return params.W * j - params.g + params.zz * sector_degrees(n) / 2


def sector_constant(params: ModelParams) -> float:
    """(N - 1) Delta / 4 + sum_j (j W / 2 - g / 4)."""
    n = params.spec.n_sites
    j = np.arange(1, n + 1)
    return float((n - 1) * params.zz / 4 + np.sum(j * params.W / 2 - params.g / 4))


def build_spin32_sector(params: ModelParams) -> tuple[SparseOperator, float]:
    """Pseudo-spin Hamiltonian of the sector, with S^z = sigma^z + 1/2.

    H = sum_b Delta sigma_j sigma_{j+1} + sum_j [-g (sigma_j)^2 + (W j - g + Delta deg_j / 2) sigma_j]

    Together with the returned constant this is exactly H'_eff of the spin-3/2
    chain restricted to the sector.

    Returns:
        (operator on 2^N states, constant)

    Raises:
        ModelSpecError: Parent model is not spin-3/2
    """
    _require_spin32(params)
    space = sector_space(params)
    n = space.n_sites
    h = SparseOperator.zeros(space.dim)

    for j in range(1, n):
        h = h + params.zz * spin_product({j: PAULI_Z, j + 1: PAULI_Z}, space)

    fields = sector_fields(params)
    eye2 = np.eye(2, dtype=np.complex128)
    for j in range(1, n + 1):
        h = h + (-params.g) * spin_product({j: eye2}, space)  # sigma^2 = I
        h = h + float(fields[j - 1]) * spin_product({j: PAULI_Z}, space)

    const = sector_constant(params)
    logger.debug(f"Spin-3/2 sector Hamiltonian: dim={h.dim}, constant={const:.6f}")
    return SparseOperator(h.raw, hermitian="yes"), const


def restrict_effective(params: ModelParams) -> SparseOperator:
    """H'_eff of the spin-3/2 chain restricted to the sector (substitution oracle)."""
    full = build_effective(params, spin_only=True)
    return full.restrict(sector_indices(params))
