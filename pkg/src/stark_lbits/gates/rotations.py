"""Single- and two-l-bit gates generated by the effective Hamiltonian.

Every gate acts on operators as X -> R X R^dagger with R(t) = exp(i t G), the
Heisenberg evolution under G. With [G, A] = omega A this gives
R A R^dagger = e^{i omega t} A.
"""

import logging
from typing import Optional

import numpy as np
import scipy.linalg as la
from scipy.signal import find_peaks

from stark_lbits.config import settings
from stark_lbits.gates.charges import build_lbit_charge, sigma_x, sigma_y
from stark_lbits.hamiltonians import build_effective
from stark_lbits.hilbert import SparseOperator, hs_inner, hs_norm
from stark_lbits.lbits import EdgeSiteError, check_interior, seed_frequency, seed_operator
from stark_lbits.propagation import dense_eig, heisenberg_op
from stark_lbits.schemas.gates import GateReport, GateSpec, RotationTrace
from stark_lbits.schemas.model import ModelParams
from stark_lbits.schemas.results import IdentityReport

logger = logging.getLogger(__name__)


def spin_params(params: ModelParams) -> ModelParams:
    """Same couplings on the phononless chain."""
    return params.replace(spec=params.spec.spin_only())


def conjugate(r: np.ndarray, op: SparseOperator) -> np.ndarray:
    """R X R^dagger."""
    return r @ op.to_dense() @ r.conj().T


def _unitarity(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


def gate_rot_z(t: float, params: ModelParams, sites: Optional[list[int]] = None) -> GateReport:
    """R_Sigma^z(t) = exp(i H'_eff t), which only adds phases to the seeds.

    Checks R A_k R^dagger = e^{i omega_k t} A_k for every seed at the chosen
    interior sites, R Q_2 R^dagger = Q_2, and unitarity.
    """
    sp_params = spin_params(params)
    spec = sp_params.spec
    h = build_effective(sp_params)
    r = np.diag(np.exp(1j * h.diag().real * t))
    sites = sites or list(range(2, spec.n_sites))
    tol = settings.identity_tolerance

    checks = IdentityReport()
    for j in sites:
        check_interior(j, spec.n_sites)
        for k in (1, 2, 3, 4):
            a = seed_operator(k, j, spec)
            omega = seed_frequency(k, j, sp_params)
            deviation = np.max(np.abs(conjugate(r, a) - np.exp(1j * omega * t) * a.to_dense()))
            checks.add(f"R A{k}({j}) R+ = e^(i w t) A{k}", float(deviation), tol)
        q = build_lbit_charge(j, spec)
        checks.add(f"R Q2({j}) R+ = Q2", float(np.max(np.abs(conjugate(r, q) - q.to_dense()))), tol)
    checks.add("unitarity", _unitarity(r), tol)

    gate = GateSpec(kind="rot_z", sites=sites, duration=t, params=params)
    return GateReport(gate=gate, unitary=r, checks=checks)


def ising_generator(j: int, params: ModelParams) -> tuple[SparseOperator, float]:
    """G = Q_2(j) Q_2(j+1) and the norm of [Q_2(j), Q_2(j+1)].

    Raises:
        EdgeSiteError: j or j + 1 is not interior
    """
    spec = params.spec.spin_only()
    if j < 2 or j + 1 > spec.n_sites - 1:
        raise EdgeSiteError(
            f"Ising gate on ({j}, {j + 1}) needs both sites interior to 1..{spec.n_sites}"
        )
    q1 = build_lbit_charge(j, spec)
    q2 = build_lbit_charge(j + 1, spec)
    comm = q1.commutator(q2).frobenius_norm()
    if comm > settings.identity_tolerance:
        logger.warning(f"Q2({j}) and Q2({j + 1}) do not commute (norm {comm:.3e})")
    return q1 @ q2, comm


def gate_ising(j: int, t: float, params: ModelParams) -> GateReport:
    """R_ZZ(t) = exp(i t Q_2(j) Q_2(j+1) / 2), checked to commute with H'_eff."""
    sp_params = spin_params(params)
    g, comm = ising_generator(j, sp_params)
    h = build_effective(sp_params)
    tol = settings.identity_tolerance

    u = la.expm(1j * t * g.to_dense() / 2)
    checks = IdentityReport()
    checks.add("[H'_eff, G] = 0", h.commutator(g).frobenius_norm(), tol)
    checks.add("unitarity", _unitarity(u), tol)

    gate = GateSpec(kind="ising", sites=[j, j + 1], duration=t, params=params)
    meta = {"charge_commutator_norm": comm, "generator_order": f"Q2({j}) @ Q2({j + 1})"}
    return GateReport(gate=gate, unitary=u, checks=checks, meta=meta)


def rot_x_hamiltonian(j: int, params: ModelParams) -> SparseOperator:
    """H'_eff with the tilt switched off plus Sigma^x_j."""
    sp_params = spin_params(params).replace(W=0.0)
    h = build_effective(sp_params) + sigma_x(j, sp_params.spec)
    return SparseOperator(h.raw, hermitian="yes")


def _overlap(a: SparseOperator, b: SparseOperator) -> float:
    return float(hs_inner(a, b).real / (hs_norm(a) * hs_norm(b)))


def rot_x_initial_slope(j: int, params: ModelParams) -> float:
    """d/dt of the Sigma^y overlap at t = 0: hs(Sigma^y, i[H, Q_2]) / norms."""
    spec = params.spec.spin_only()
    h = rot_x_hamiltonian(j, params)
    q = build_lbit_charge(j, spec)
    sy = sigma_y(j, spec)
    slope = hs_inner(sy, 1j * h.commutator(q)).real
    return float(slope / (hs_norm(sy) * hs_norm(q)))


def first_maximum(values: np.ndarray) -> int:
    """Index of the first local maximum of |values|, else of the largest one."""
    magnitude = np.abs(np.asarray(values))
    peaks, _ = find_peaks(magnitude)
    if peaks.size:
        return int(peaks[0])
    return int(np.argmax(magnitude))


def rot_x_trace(j: int, params: ModelParams, times: np.ndarray) -> RotationTrace:
    """Overlaps of R Q_2 R^dagger with Sigma^y and Q_2 along a time grid.

    The calibrated X-gate duration is the time of the first maximum of
    |overlap_y|, where the rotation towards Sigma^y stops growing.
    """
    check_interior(j, params.spec.n_sites)
    spec = params.spec.spin_only()
    eig = dense_eig(rot_x_hamiltonian(j, params))
    q = build_lbit_charge(j, spec)
    sy = sigma_y(j, spec)

    overlap_y = np.empty(len(times))
    overlap_q = np.empty(len(times))
    for i, t in enumerate(times):
        rotated = heisenberg_op(q, eig, float(t))
        overlap_y[i] = _overlap(sy, rotated)
        overlap_q[i] = _overlap(q, rotated)

    best = first_maximum(overlap_y)
    calibrated = float(times[best])
    logger.info(f"X gate at j={j} calibrated to t_x={calibrated:.4f} (|overlap|={abs(overlap_y[best]):.4f})")
    return RotationTrace(
        times=np.asarray(times, dtype=np.float64),
        overlap_y=overlap_y,
        overlap_q=overlap_q,
        initial_slope=rot_x_initial_slope(j, params),
        calibrated_time=calibrated,
    )


def gate_rot_x(j: int, t: float, params: ModelParams) -> GateReport:
    """R_Sigma^x(t) = exp(i t H_eff(W=0)) with Sigma^x_j switched on."""
    check_interior(j, params.spec.n_sites)
    spec = params.spec.spin_only()
    eig = dense_eig(rot_x_hamiltonian(j, params))
    u = eig.unitary(-t)
    q = build_lbit_charge(j, spec)
    rotated = heisenberg_op(q, eig, t)

    checks = IdentityReport()
    checks.add("unitarity", _unitarity(u), settings.identity_tolerance)
    meta = {
        "overlap_y": _overlap(sigma_y(j, spec), rotated),
        "overlap_q": _overlap(q, rotated),
    }
    gate = GateSpec(kind="rot_x", sites=[j], duration=t, params=params)
    return GateReport(gate=gate, unitary=u, checks=checks, meta=meta)
