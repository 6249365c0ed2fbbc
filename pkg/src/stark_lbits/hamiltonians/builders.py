"""Hamiltonian builders for the tilted XXZ chain and its Holstein phonons.

All builders take a ModelParams and return operators on ``params.spec``;
open boundary conditions throughout.
"""

import logging

import numpy as np

from stark_lbits.hilbert import SparseOperator, boson_op, spin_op
from stark_lbits.schemas.model import ModelParams

logger = logging.getLogger(__name__)


class ModelSpecError(ValueError):
    """Raised when a Hamiltonian is requested on an unsuitable space."""


def _require_bosons(params: ModelParams, what: str) -> None:
    if params.spec.boson_levels < 2:
        raise ModelSpecError(
            f"{what} needs boson_levels >= 2, got {params.spec.boson_levels}"
        )


def build_hopping(params: ModelParams) -> SparseOperator:
    """K = sum_j (J/2) S_j^+ S_{j+1}^-."""
    spec = params.spec
    k = SparseOperator.zeros(spec.dim)
    for j in range(1, spec.n_sites):
        k = k + (params.J / 2) * (spin_op("Sp", j, spec) @ spin_op("Sm", j + 1, spec))
    return k


def build_xx(params: ModelParams) -> SparseOperator:
    """H_XX = K + K^dagger."""
    k = build_hopping(params)
    return SparseOperator((k + k.dag()).raw, hermitian="yes")


def build_zz(params: ModelParams) -> SparseOperator:
    """H_ZZ = sum_j Delta S_j^z S_{j+1}^z."""
    spec = params.spec
    h = SparseOperator.zeros(spec.dim)
    for j in range(1, spec.n_sites):
        h = h + params.zz * (spin_op("Sz", j, spec) @ spin_op("Sz", j + 1, spec))
    return SparseOperator(h.raw, hermitian="yes")


def build_tilt(params: ModelParams) -> SparseOperator:
    """M = sum_j j W S_j^z (diagonal)."""
    spec = params.spec
    m = SparseOperator.zeros(spec.dim)
    for j in range(1, spec.n_sites + 1):
        m = m + (j * params.W) * spin_op("Sz", j, spec)
    return SparseOperator(m.raw, hermitian="yes")


def build_system(params: ModelParams) -> SparseOperator:
    """H_s = H_XX + H_ZZ + M.

    A single site has no bond and reduces to W S^z.
    """
    h = build_xx(params) + build_zz(params) + build_tilt(params)
    logger.debug(f"Built H_s on dim {h.dim} (N={params.spec.n_sites}, W={params.W})")
    return SparseOperator(h.raw, hermitian="yes")


def build_perp_coupling(j: int, params: ModelParams) -> SparseOperator:
    """h_j^perp = lambda_perp S_j^+ a_j (raising half of the spin-flip coupling)."""
    _require_bosons(params, "Spin-flip coupling")
    spec = params.spec
    return params.lambda_perp * (spin_op("Sp", j, spec) @ boson_op("a", j, spec))


def build_par_coupling(j: int, params: ModelParams) -> SparseOperator:
    """h_j^par = lambda_par (a_j + a_j^dagger) S_j^z."""
    _require_bosons(params, "Longitudinal coupling")
    spec = params.spec
    x = boson_op("a", j, spec) + boson_op("adag", j, spec)
    return params.lambda_par * (x @ spin_op("Sz", j, spec))


def build_phonon_energy(params: ModelParams) -> SparseOperator:
    """omega0 sum_j n_j."""
    _require_bosons(params, "Phonon energy")
    spec = params.spec
    h = SparseOperator.zeros(spec.dim)
    for j in range(1, spec.n_sites + 1):
        h = h + params.omega0 * boson_op("n", j, spec)
    return SparseOperator(h.raw, hermitian="yes")


def build_longitudinal(params: ModelParams) -> SparseOperator:
    """H_ZZ^sb = sum_j lambda_par (a_j + a_j^dagger) S_j^z."""
    _require_bosons(params, "Longitudinal coupling")
    h = SparseOperator.zeros(params.spec.dim)
    for j in range(1, params.spec.n_sites + 1):
        h = h + build_par_coupling(j, params)
    return SparseOperator(h.raw, hermitian="yes")


def build_bath_coupling(params: ModelParams) -> SparseOperator:
    """H_sb = sum_j [omega0 n_j + lambda_perp (S^+ a + S^- a^dagger) + lambda_par (a + a^dagger) S^z].

    Raises:
        ModelSpecError: Fewer than two boson levels
    """
    _require_bosons(params, "Bath coupling")
    h = build_phonon_energy(params) + build_longitudinal(params)
    for j in range(1, params.spec.n_sites + 1):
        hp = build_perp_coupling(j, params)
        h = h + hp + hp.dag()
    logger.debug(
        f"Built H_sb on dim {h.dim} (N_B={params.spec.boson_levels}, "
        f"lambda_perp={params.lambda_perp}, lambda_par={params.lambda_par})"
    )
    return SparseOperator(h.raw, hermitian="yes")


def build_full(params: ModelParams) -> SparseOperator:
    """H = H_s + H_sb (H_s alone on a phononless or single-level space)."""
    h = build_system(params)
    if params.spec.boson_levels >= 2:
        h = h + build_bath_coupling(params)
    logger.info(f"Full Hamiltonian ready: dim={h.dim}")
    return SparseOperator(h.raw, hermitian="yes")


def build_effective(params: ModelParams, spin_only: bool = False) -> SparseOperator:
    """Prethermal effective Hamiltonian, diagonal in the S^z product basis.

    H'_eff = sum_j [Delta S_j^z S_{j+1}^z - g (S_j^z)^2 + W j S_j^z]. For spin-1/2
    the (S^z)^2 term is the constant -g/4 per site; it is kept.

    Args:
        params: Model couplings
        spin_only: Build on the phononless space instead of padding with identity

    Returns:
        Diagonal Hermitian operator
    """
    spec = params.spec.spin_only() if spin_only else params.spec
    s = (spec.spin_levels - 1) / 2
    m = s - np.arange(spec.spin_levels)

    # enumerate S^z configurations directly; the matrix is diagonal
    grids = np.meshgrid(*([m] * spec.n_sites), indexing="ij")
    sz = np.stack([g.ravel() for g in grids], axis=0)  # (N, spin_dim)
    sites = np.arange(1, spec.n_sites + 1)[:, None]

    energy = (
        params.zz * np.sum(sz[:-1] * sz[1:], axis=0)
        - params.g * np.sum(sz**2, axis=0)
        + params.W * np.sum(sites * sz, axis=0)
    )
    energy = np.repeat(energy, spec.boson_dim)
    return SparseOperator.diagonal(energy.astype(np.float64))
