"""Operator locality in the orthonormal product basis {I, S^+, S^-, S^z}."""

import logging

import numpy as np

from stark_lbits.hilbert import OperatorSpecError, SparseOperator, spin_matrix
from stark_lbits.propagation import check_dense_feasible
from stark_lbits.schemas.model import SpaceSpec
from stark_lbits.schemas.results import LocalityProfile

logger = logging.getLogger(__name__)


def single_site_basis() -> np.ndarray:
    """{I, sqrt2 S^+, sqrt2 S^-, 2 S^z}, each of unit normalized HS norm; shape (4, 2, 2)."""
    return np.stack(
        [
            spin_matrix("I", 2),
            np.sqrt(2) * spin_matrix("Sp", 2),
            np.sqrt(2) * spin_matrix("Sm", 2),
            2 * spin_matrix("Sz", 2),
        ]
    )


def trace_out_phonons(op: SparseOperator, spec: SpaceSpec) -> np.ndarray:
    """Tr_ph(A) / dim_ph as a dense spin-block matrix."""
    if op.dim != spec.dim:
        raise OperatorSpecError(f"Operator dim {op.dim} does not match space dim {spec.dim}")
    ds, db = spec.spin_dim, spec.boson_dim
    mat = op.to_dense()
    if db == 1:
        return np.array(mat)
    return np.einsum("ibjb->ij", mat.reshape(ds, db, ds, db)) / db


def string_coefficients(spin_block: np.ndarray, n_sites: int) -> np.ndarray:
    """Coefficients c_mu = hs_inner(B_mu, A) over all 4^N basis strings.

    Returns:
        Array of shape (4,) * n_sites; index 0 on a site is the identity
    """
    d = 2**n_sites
    # interleave (row_i, col_i) per site, then fold each pair into one axis of size 4
    tensor = spin_block.reshape((2,) * (2 * n_sites))
    order = [ax for i in range(n_sites) for ax in (i, n_sites + i)]
    tensor = tensor.transpose(order).reshape((4,) * n_sites)

    basis = single_site_basis().conj().reshape(4, 4)
    for site in range(n_sites):
        tensor = np.moveaxis(np.tensordot(basis, tensor, axes=([1], [site])), 0, site)
    return tensor / d


def locality_profile(tau: SparseOperator, spec: SpaceSpec) -> LocalityProfile:
    """Per-site weights of an operator after tracing out the phonons.

    Site weight r_i sums |c_mu|^2 over basis strings that act non-trivially on
    site i. Returned weights are r_i / sum_i r_i; ``normalization`` is the
    total weight of all non-identity strings.

    Raises:
        ValueError: Not a spin-1/2 chain
        DenseCeilingError: Operator too large for a dense expansion
    """
    if spec.spin_levels != 2:
        raise ValueError(f"Locality basis is defined for spin-1/2, got spin_levels={spec.spin_levels}")
    check_dense_feasible(tau.dim)

    block = trace_out_phonons(tau, spec)
    coeffs = string_coefficients(block, spec.n_sites)
    power = np.abs(coeffs) ** 2

    identity_weight = float(power[(0,) * spec.n_sites])
    normalization = float(power.sum() - identity_weight)

    raw = np.empty(spec.n_sites)
    for site in range(spec.n_sites):
        raw[site] = np.take(power, [1, 2, 3], axis=site).sum()

    total = raw.sum()
    weights = raw / total if total > 0 else raw
    logger.debug(f"Locality profile: peak at site {int(np.argmax(weights)) + 1}")
    return LocalityProfile(
        weights=weights,
        normalization=normalization,
        identity_weight=identity_weight,
        method="phonon-traced" if spec.has_bosons else "spin-only",
    )
