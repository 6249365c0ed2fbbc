"""CNOT from X rotations on the target l-bit around an Ising gate."""

import logging
from typing import Optional

import numpy as np

from stark_lbits.gates.charges import build_lbit_charge
from stark_lbits.gates.rotations import gate_ising, gate_rot_x, gate_rot_z, spin_params
from stark_lbits.schemas.gates import CnotReport, GateReport
from stark_lbits.schemas.model import ModelParams

logger = logging.getLogger(__name__)

DECOMPOSITION = "X_target(t_x) . ZZ(t_zz) . Z_hold(t_hold) . X_target(t_x)"


class GateCalibrationError(RuntimeError):
    """Raised when a composite gate needs an uncalibrated duration."""


def ising_quarter_time(q_max: float) -> float:
    """t_zz = pi / (2 q^2), a quarter turn of the joint charge phase."""
    return float(np.pi / (2 * q_max**2))


def _sector_projectors(
    j: int, params: ModelParams
) -> tuple[list[tuple[float, float]], list[np.ndarray], float]:
    spec = params.spec.spin_only()
    d1 = build_lbit_charge(j, spec).diag().real
    d2 = build_lbit_charge(j + 1, spec).diag().real
    q_max = float(np.max(np.abs(d1)))
    labels: list[tuple[float, float]] = []
    masks: list[np.ndarray] = []
    for s1 in (q_max, -q_max):
        for s2 in (q_max, -q_max):
            mask = np.isclose(d1, s1) & np.isclose(d2, s2)
            if mask.any():
                labels.append((s1, s2))
                masks.append(mask)
    return labels, masks, q_max


def compose_cnot(
    j: int,
    params: ModelParams,
    t_x: Optional[float],
    t_hold: float = 0.0,
    t_zz: Optional[float] = None,
) -> CnotReport:
    """Execute X(t_x) -> Ising(t_zz) -> hold(t_hold) -> X(t_x) with target j + 1.

    The report holds the transition weights between the joint (+-q, +-q)
    eigenspaces of Q_2(j) and Q_2(j+1) and the weight leaking out of them.

    Raises:
        GateCalibrationError: No calibrated X duration supplied
        EdgeSiteError: j or j + 1 not interior
    """
    if t_x is None:
        raise GateCalibrationError("CNOT needs a calibrated X-gate duration (run rot_x calibration)")

    sp = spin_params(params)
    labels, masks, q_max = _sector_projectors(j, sp)
    if t_zz is None:
        t_zz = ising_quarter_time(q_max)

    steps: list[GateReport] = [
        gate_rot_x(j + 1, t_x, sp),
        gate_ising(j, t_zz, sp),
        gate_rot_z(t_hold, sp, sites=[j, j + 1]),
        gate_rot_x(j + 1, t_x, sp),
    ]
    u = np.eye(sp.spec.dim, dtype=np.complex128)
    for step in steps:
        u = step.unitary @ u

    n = len(masks)
    transitions = np.zeros((n, n))
    for b, mb in enumerate(masks):
        block = u[:, mb]
        norm_b = float(mb.sum())
        for a, ma in enumerate(masks):
            transitions[a, b] = float(np.sum(np.abs(block[ma]) ** 2) / norm_b)
    leakage = float(np.clip(1.0 - transitions.sum(axis=0), 0.0, None).mean()) if n else 0.0
    unitarity = float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))

    logger.info(f"CNOT on ({j}, {j + 1}): logical sectors={n}, leakage={leakage:.3e}")
    return CnotReport(
        schedule=[s.gate for s in steps],
        unitary=u,
        sector_labels=labels,
        transitions=transitions,
        leakage=leakage,
        logical_dim=n,
        unitarity_residual=unitarity,
        decomposition=DECOMPOSITION,
        meta={"t_x": t_x, "t_zz": t_zz, "t_hold": t_hold, "q_max": q_max},
    )
