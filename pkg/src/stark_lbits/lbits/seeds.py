"""Analytic dynamical l-bit seeds A_k(j) of the effective Hamiltonian.

For spin-1/2 each seed is S_j^+ dressed by a function of the two neighbouring
S^z values:

    A_1 = S^+_j - 4 S^z_{j-1} S^+_j S^z_{j+1}                  (anti-aligned neighbours)
    A_2 = S^z_{j-1} S^+_j - S^+_j S^z_{j+1}                    (anti-aligned, signed)
    A_3 = S^+_j + 2 S^z_{j-1} S^+_j + 2 S^+_j S^z_{j+1} + 4 S^z_{j-1} S^+_j S^z_{j+1}
    A_4 = S^+_j - 2 S^z_{j-1} S^+_j - 2 S^+_j S^z_{j+1} + 4 S^z_{j-1} S^+_j S^z_{j+1}

with [H'_eff, A_k] = omega_k A_k, omega_1 = omega_2 = W j and
omega_3,4 = W j +- Delta.
"""

import logging

from stark_lbits.hilbert import SparseOperator, spin_product
from stark_lbits.lbits.errors import EdgeSiteError
from stark_lbits.schemas.model import ModelParams, SpaceSpec
from stark_lbits.schemas.results import LbitSeed

logger = logging.getLogger(__name__)

SEED_KINDS = (1, 2, 3, 4)

# coefficients of (S^+, S^z S^+, S^+ S^z, S^z S^+ S^z) per seed
_SEED_TERMS: dict[int, tuple[float, float, float, float]] = {
    1: (1.0, 0.0, 0.0, -4.0),
    2: (0.0, 1.0, -1.0, 0.0),
    3: (1.0, 2.0, 2.0, 4.0),
    4: (1.0, -2.0, -2.0, 4.0),
}


def check_interior(j: int, n_sites: int) -> None:
    """Seeds reference j - 1 and j + 1, so j must be interior.

    Raises:
        EdgeSiteError: j outside 2..N-1
    """
    if not 2 <= j <= n_sites - 1:
        raise EdgeSiteError(f"Site {j} is not interior to a chain of {n_sites} sites")


def seed_operator(k: int, j: int, spec: SpaceSpec) -> SparseOperator:
    """A_k(j) embedded in spec (identity on phonons).

    Raises:
        ValueError: k outside 1..4 or a spin other than 1/2
        EdgeSiteError: j is an edge site
    """
    if k not in _SEED_TERMS:
        raise ValueError(f"Seed index must be one of {SEED_KINDS}, got {k}")
    if spec.spin_levels != 2:
        raise ValueError(
            f"Seeds are built from spin-1/2 operators, got spin_levels={spec.spin_levels}"
        )
    check_interior(j, spec.n_sites)

    c_plain, c_left, c_right, c_both = _SEED_TERMS[k]
    op = SparseOperator.zeros(spec.dim)
    if c_plain:
        op = op + c_plain * spin_product({j: "Sp"}, spec)
    if c_left:
        op = op + c_left * spin_product({j - 1: "Sz", j: "Sp"}, spec)
    if c_right:
        op = op + c_right * spin_product({j: "Sp", j + 1: "Sz"}, spec)
    if c_both:
        op = op + c_both * spin_product({j - 1: "Sz", j: "Sp", j + 1: "Sz"}, spec)
    return SparseOperator(op.raw, hermitian="no")


def seed_frequency(k: int, j: int, params: ModelParams) -> float:
    """omega_k(j) for the spin-1/2 effective Hamiltonian."""
    base = params.W * j
    if k in (1, 2):
        return base
    if k == 3:
        return base + params.zz
    if k == 4:
        return base - params.zz
    raise ValueError(f"Seed index must be one of {SEED_KINDS}, got {k}")


def build_seed(k: int, j: int, params: ModelParams) -> LbitSeed:
    """Seed A_k(j) on params.spec together with its frequency."""
    op = seed_operator(k, j, params.spec)
    return LbitSeed(k=k, site=j, op=op, freq=seed_frequency(k, j, params))


def build_charge(k: int, j: int, spec: SpaceSpec) -> SparseOperator:
    """Conserved l-bit Q_k(j) = [A_k^dagger(j), A_k(j)]."""
    a = seed_operator(k, j, spec)
    q = a.dag().commutator(a)
    return SparseOperator(q.raw, hermitian="yes")


def eigenoperator_residual(h: SparseOperator, a: SparseOperator, omega: float) -> float:
    """||[H, A] - omega A||_F / ||A||_F.

    Raises:
        OperatorSpecError: Dimension mismatch
    """
    norm = a.frobenius_norm()
    if norm == 0:
        return 0.0
    return (h.commutator(a) - omega * a).frobenius_norm() / norm
