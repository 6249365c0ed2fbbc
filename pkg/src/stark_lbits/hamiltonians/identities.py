"""Numerical checks of the tilt-frame and polaron identities."""

import logging

import numpy as np
import scipy.linalg as la
from scipy.sparse import coo_matrix

from stark_lbits.config import settings
from stark_lbits.hamiltonians.builders import (
    ModelSpecError,
    build_bath_coupling,
    build_effective,
    build_hopping,
    build_longitudinal,
    build_par_coupling,
    build_perp_coupling,
    build_phonon_energy,
    build_system,
    build_tilt,
    build_zz,
)
from stark_lbits.hilbert import SparseOperator, boson_matrix, boson_op, spin_matrix, spin_op
from stark_lbits.schemas.model import ModelParams, SpaceSpec
from stark_lbits.schemas.results import IdentityReport

logger = logging.getLogger(__name__)


def _residual(lhs: SparseOperator, rhs: SparseOperator) -> float:
    return (lhs - rhs).frobenius_norm()


def verify_tilt_commutators(params: ModelParams) -> IdentityReport:
    """Commutators of the tilt M with every piece of H.

    Phonon terms are only checked when the space carries at least two boson
    levels.
    """
    tol = settings.identity_tolerance
    report = IdentityReport()
    m = build_tilt(params)
    k = build_hopping(params)
    w = params.W

    report.add("[M,K] = -W K", _residual(m.commutator(k), -w * k), tol)
    report.add("[M,K+] = W K+", _residual(m.commutator(k.dag()), w * k.dag()), tol)
    report.add("[M,H_ZZ] = 0", m.commutator(build_zz(params)).frobenius_norm(), tol)

    if params.spec.boson_levels >= 2:
        for j in range(1, params.spec.n_sites + 1):
            hp = build_perp_coupling(j, params)
            report.add(f"[M,h_perp({j})] = jW h_perp", _residual(m.commutator(hp), (j * w) * hp), tol)
            report.add(
                f"[M,h_perp({j})+] = -jW h_perp+",
                _residual(m.commutator(hp.dag()), (-j * w) * hp.dag()),
                tol,
            )
            hz = build_par_coupling(j, params)
            report.add(f"[M,h_par({j})] = 0", m.commutator(hz).frobenius_norm(), tol)

    logger.info(
        f"Tilt commutators: {sum(c.passed for c in report.checks)}/{len(report.checks)} passed"
    )
    return report


def build_tilt_projection(h: SparseOperator, params: ModelParams) -> SparseOperator:
    """Time average of e^{iMt} H e^{-iMt} over one tilt period.

    M is diagonal, so the average keeps exactly the matrix elements between
    product states of equal M eigenvalue.
    """
    m_diag = build_tilt(params).diag().real
    coo = h.to_sparse().tocoo()
    # M eigenvalues are integer or half-integer multiples of W
    keep = np.abs(m_diag[coo.row] - m_diag[coo.col]) < 1e-9 * max(1.0, abs(params.W))
    proj = coo_matrix((coo.data[keep], (coo.row[keep], coo.col[keep])), shape=coo.shape)
    return SparseOperator(proj, hermitian=h.hermitian)


def verify_tilt_projection(params: ModelParams) -> IdentityReport:
    """Projection of H_s + H_sb onto the M-conserving part.

    Expected: M + H_ZZ + H_ZZ^sb + omega0 sum n (the XX and spin-flip pieces
    average out when W != 0).
    """
    tol = settings.identity_tolerance
    report = IdentityReport()
    if params.W == 0:
        raise ModelSpecError("Tilt projection identity needs W != 0")

    h = build_system(params)
    expected = build_tilt(params) + build_zz(params)
    if params.spec.boson_levels >= 2:
        h = h + build_bath_coupling(params)
        expected = expected + build_longitudinal(params) + build_phonon_energy(params)

    d = build_tilt_projection(h, params)
    report.add("D = M + H_ZZ + H_ZZ^sb + w0 n", _residual(d, expected), tol)
    return report


def _padded_polaron_residual(params: ModelParams) -> float:
    spec = params.spec
    nb = spec.boson_levels
    padded = params.replace(spec=spec.with_bosons(2 * nb))
    pspec = padded.spec
    if pspec.dim > settings.dense_ceiling:
        raise ModelSpecError(
            f"Padded polaron check needs dim {pspec.dim} > dense ceiling {settings.dense_ceiling}"
        )

    s = params.lambda_par / params.omega0
    gen = SparseOperator.zeros(pspec.dim)
    for j in range(1, pspec.n_sites + 1):
        gen = gen + s * ((boson_op("adag", j, pspec) - boson_op("a", j, pspec)) @ spin_op("Sz", j, pspec))
    p = la.expm(gen.to_dense())

    h = (build_longitudinal(padded) + build_phonon_energy(padded)).to_dense()
    transformed = p @ h @ p.conj().T

    target = build_phonon_energy(padded)
    for j in range(1, pspec.n_sites + 1):
        sz = spin_op("Sz", j, pspec)
        target = target - params.g * (sz @ sz)

    # keep basis states whose every boson digit lies inside the original truncation
    digits = np.array(np.unravel_index(np.arange(pspec.dim), pspec.shape))
    inside = np.all(digits[pspec.n_sites :] < nb, axis=0)
    idx = np.nonzero(inside)[0]
    diff = transformed[np.ix_(idx, idx)] - target.to_dense()[np.ix_(idx, idx)]
    return float(np.linalg.norm(diff))


def polaron_ground_shift(params: ModelParams) -> tuple[float, float]:
    """Lowest single-site eigenvalue of omega0 n + lambda_par (a + a^dagger) S^z.

    Returns:
        (numeric, analytic) where analytic = -g S^2 for the extremal S^z = +-S
    """
    nb = params.spec.boson_levels
    if nb < 2:
        raise ModelSpecError(f"Polaron shift needs boson_levels >= 2, got {nb}")
    sz = spin_matrix("Sz", params.spec.spin_levels)
    a = boson_matrix("a", nb)
    n = boson_matrix("n", nb)
    eye_s = np.eye(params.spec.spin_levels)
    h = params.omega0 * np.kron(eye_s, n) + params.lambda_par * np.kron(sz, a + a.conj().T)
    numeric = float(la.eigvalsh(h)[0])
    analytic = -params.g * params.spec.spin**2
    return numeric, analytic


def verify_polaron_decoupling(params: ModelParams) -> IdentityReport:
    """Polaron displacement decouples the longitudinal coupling.

    Evaluates P (H_ZZ^sb + omega0 sum n) P^dagger with
    P = exp[sum_j (lambda_par/omega0)(a_j^dagger - a_j) S_j^z] on a space with
    twice the boson truncation, projects back onto the original truncation and
    compares with omega0 sum n - g sum (S^z)^2. The residual is
    truncation-limited and shrinks as boson_levels grows.

    Raises:
        ModelSpecError: Fewer than two boson levels
    """
    nb = params.spec.boson_levels
    if nb < 2:
        raise ModelSpecError(f"Polaron check needs boson_levels >= 2, got {nb}")

    report = IdentityReport()
    residual = 0.0 if params.lambda_par == 0 else _padded_polaron_residual(params)
    report.add("P H_sb^par P+ = w0 n - g (S^z)^2", residual, 1e-6)

    site = SpaceSpec(n_sites=1, spin_levels=params.spec.spin_levels, boson_levels=nb)
    numeric, analytic = polaron_ground_shift(params.replace(spec=site))
    report.add("single-site polaron ground energy = -g S^2", abs(numeric - analytic), 1e-6)
    report.notes["polaron_ground_numeric"] = numeric
    report.notes["polaron_ground_analytic"] = analytic
    logger.info(f"Polaron decoupling residual {residual:.3e}, ground shift {numeric:.8f} vs {analytic:.8f}")
    return report


def verify_trace_identity(params: ModelParams) -> IdentityReport:
    """Tr(H'_eff) = -dim N g S(S+1)/3 (bond and tilt terms are traceless)."""
    report = IdentityReport()
    h = build_effective(params)
    s = params.spec.spin
    expected = -h.dim * params.spec.n_sites * params.g * s * (s + 1) / 3
    scale = max(1.0, abs(expected))
    report.add("Tr H'_eff = -dim N g <(S^z)^2>", abs(h.trace() - expected) / scale, 1e-12)
    return report
