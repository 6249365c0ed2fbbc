"""Spectral filter turning a seed into a dynamical l-bit of the full Hamiltonian."""

import logging

import numpy as np

from stark_lbits.hilbert import SparseOperator, hs_norm
from stark_lbits.propagation import EigenDecomposition, check_dense_feasible
from stark_lbits.schemas.results import LbitSeed

logger = logging.getLogger(__name__)


def sinc_filter(
    op: SparseOperator, omega: float, eig: EigenDecomposition, horizon: float
) -> SparseOperator:
    """(1/2T) int_{-T}^{T} e^{-i omega t} U^dagger(t) A U(t) dt in closed form.

    In the eigenbasis the time integral is A~_mn sinc((E_m - E_n - omega) T)
    with sinc(x) = sin(x)/x, so elements at resonance keep weight 1 and
    off-resonant ones fall off as 1/(gap T).
    """
    check_dense_feasible(op.dim)
    a_eig = eig.to_eigenbasis(op)
    detuning = eig.gaps() - omega
    # numpy's sinc is sin(pi x)/(pi x)
    kernel = np.sinc(detuning * horizon / np.pi)
    return SparseOperator(eig.from_eigenbasis(a_eig * kernel))


def construct_tau(
    seed: LbitSeed, eig: EigenDecomposition, horizon: float, normalize: bool = True
) -> SparseOperator:
    """Numerical l-bit tau from a seed and the eigendecomposition of the full H.

    Args:
        seed: Analytic seed with its frequency
        eig: Eigendecomposition of the Hamiltonian driving the dynamics
        horizon: Integration half-window T
        normalize: Rescale so that hs_inner(tau, tau) = 1

    Raises:
        DenseCeilingError: dim above the dense ceiling
    """
    if horizon <= 0:
        raise ValueError(f"Filter horizon must be positive, got {horizon}")
    tau = sinc_filter(seed.op, seed.freq, eig, horizon)
    norm = hs_norm(tau)
    logger.info(
        f"tau from A_{seed.k}({seed.site}) at omega={seed.freq:.4f}, T={horizon}: "
        f"retained HS norm {norm:.4e} of {hs_norm(seed.op):.4e}"
    )
    if normalize and norm > 0:
        tau = tau / norm
    return tau
