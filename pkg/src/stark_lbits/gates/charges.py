"""l-bit charge Q_2(j) and its SU(2) ladder algebra with A_2(j)."""

import logging

import numpy as np

from stark_lbits.config import settings
from stark_lbits.hilbert import SparseOperator
from stark_lbits.lbits import check_interior, seed_operator
from stark_lbits.schemas.model import SpaceSpec
from stark_lbits.schemas.results import IdentityReport

logger = logging.getLogger(__name__)

# ladder structure constant of [Q_2, A_2]
LADDER_CONSTANT = 8.0


def build_lbit_charge(j: int, spec: SpaceSpec) -> SparseOperator:
    """Q_2(j) = 4 [A_2^dagger(j), A_2(j)] = -8 P_j S_j^z.

    P_j projects on anti-aligned neighbours j - 1, j + 1; the factor 4 is the
    charge written with Pauli-normalized neighbour factors, so that
    [Q_2, A_2] = -8 A_2 and [Q_2, A_2^dagger] = 8 A_2^dagger.

    Raises:
        EdgeSiteError: j is an edge site
    """
    a2 = seed_operator(2, j, spec)
    q = 4.0 * a2.dag().commutator(a2)
    return SparseOperator(q.raw, hermitian="yes")


def sigma_x(j: int, spec: SpaceSpec) -> SparseOperator:
    """Sigma^x_j = A_2(j) + A_2^dagger(j)."""
    a2 = seed_operator(2, j, spec)
    return SparseOperator((a2 + a2.dag()).raw, hermitian="yes")


def sigma_y(j: int, spec: SpaceSpec) -> SparseOperator:
    """Sigma^y_j = i (A_2^dagger(j) - A_2(j))."""
    a2 = seed_operator(2, j, spec)
    return SparseOperator((1j * (a2.dag() - a2)).raw, hermitian="yes")


def ladder_residual(q: SparseOperator, a: SparseOperator, constant: float) -> float:
    """||[Q, A] - constant A||_F."""
    return (q.commutator(a) - constant * a).frobenius_norm()


def verify_su2(j: int, spec: SpaceSpec) -> IdentityReport:
    """Ladder relations of Q_2(j) with A_2(j) and A_2^dagger(j).

    The notes carry the same relation tested against A_1 (which shares it)
    and A_3 (which does not close).
    """
    check_interior(j, spec.n_sites)
    tol = settings.identity_tolerance
    q = build_lbit_charge(j, spec)
    a2 = seed_operator(2, j, spec)

    report = IdentityReport()
    report.add("[Q2,A2] = -8 A2", ladder_residual(q, a2, -LADDER_CONSTANT), tol)
    report.add("[Q2,A2+] = 8 A2+", ladder_residual(q, a2.dag(), LADDER_CONSTANT), tol)
    report.add("Q2 Hermitian", (q - q.dag()).frobenius_norm(), tol)
    report.add("Tr Q2 = 0", abs(q.trace()), tol)

    a1 = seed_operator(1, j, spec)
    a3 = seed_operator(3, j, spec)
    report.notes["A1_ladder_residual"] = ladder_residual(q, a1, -LADDER_CONSTANT)
    report.notes["A3_ladder_residual"] = ladder_residual(q, a3, -LADDER_CONSTANT)
    report.notes["A3_relative_residual"] = report.notes["A3_ladder_residual"] / a3.frobenius_norm()
    report.notes["charge_spectrum"] = sorted({float(x) for x in np.round(q.diag().real, 12)})
    logger.info(
        f"SU(2) at j={j}: residuals {report.checks[0].residual:.2e}, {report.checks[1].residual:.2e}"
    )
    return report
