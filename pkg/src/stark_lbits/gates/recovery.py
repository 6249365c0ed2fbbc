"""Coherent error windows and the relaxation of A_2 back to its l-bit orbit."""

import logging
from typing import Literal, Optional

import numpy as np

from stark_lbits.correlation import check_grid
from stark_lbits.gates.rotations import spin_params
from stark_lbits.hamiltonians import build_effective, build_system, build_tilt
from stark_lbits.hilbert import SparseOperator, hs_norm, spin_op, spin_product
from stark_lbits.lbits import check_interior, seed_frequency, seed_operator
from stark_lbits.propagation import EigenDecomposition, dense_eig
from stark_lbits.schemas.gates import ErrorInjection, RecoveryReport
from stark_lbits.schemas.model import ModelParams, SpaceSpec
from stark_lbits.schemas.results import CorrelationSeries

logger = logging.getLogger(__name__)

Base = Literal["effective", "system"]

# fraction of the grid averaged for the post-window plateau
PLATEAU_FRACTION = 0.2
# smallest rise of the relative overlap after t1 that counts as a rebound
REBOUND_TOLERANCE = 1e-3


def normalized(op: SparseOperator) -> SparseOperator:
    """Rescale to unit normalized Hilbert-Schmidt norm."""
    return op / hs_norm(op)


def flip_error(j: int, spec: SpaceSpec) -> SparseOperator:
    """Single-site transverse error S^x_j (unit HS norm)."""
    return normalized(spin_op("Sx", j, spec))


def dephasing_error(j: int, spec: SpaceSpec) -> SparseOperator:
    """Diagonal coupling S^z_j S^z_{j+2} (unit HS norm)."""
    return normalized(spin_product({j: "Sz", j + 2: "Sz"}, spec))


def uniform_field_error(spec: SpaceSpec) -> SparseOperator:
    """sum_j S^z_j (unit HS norm)."""
    op = SparseOperator.zeros(spec.dim)
    for site in range(1, spec.n_sites + 1):
        op = op + spin_op("Sz", site, spec)
    return normalized(op)


def build_injection(
    error_op: SparseOperator,
    amplitude: float,
    window: tuple[float, float],
    params: ModelParams,
    label: str = "E",
) -> ErrorInjection:
    """Wrap an error and classify it by ||[M, E]||_F."""
    m = build_tilt(spin_params(params))
    comm = m.commutator(error_op).frobenius_norm()
    scale = max(1.0, error_op.frobenius_norm())
    error_class = "resonant" if comm < 1e-12 * scale else "generic"
    return ErrorInjection(
        error_op=error_op,
        amplitude=amplitude,
        window=window,
        label=label,
        error_class=error_class,
        commutator_norm=comm,
    )


class _PiecewisePropagator:
    """U(t) for H_base before the window, H_base + eps E inside it and H_relax after it."""

    def __init__(
        self,
        base: EigenDecomposition,
        relax: EigenDecomposition,
        window: tuple[float, float],
        perturbed: Optional[EigenDecomposition] = None,
    ) -> None:
        self.window = window
        self.base = base
        self.relax = relax
        self.perturbed = perturbed

    def _segment(self, start: float, stop: float) -> np.ndarray:
        t0, t1 = self.window
        mid = 0.5 * (start + stop)
        if mid < t0:
            eig = self.base
        elif mid > t1:
            eig = self.relax
        else:
            eig = self.perturbed if self.perturbed is not None else self.base
        return eig.unitary(stop - start)

    def step(self, start: float, stop: float) -> np.ndarray:
        """Propagator from start to stop, split at the window edges."""
        cuts = [start] + [c for c in self.window if start < c < stop] + [stop]
        u = np.eye(self.base.source_dim, dtype=np.complex128)
        for a, b in zip(cuts[:-1], cuts[1:]):
            u = self._segment(a, b) @ u
        return u


def _base_hamiltonian(kind: Base, params: ModelParams) -> SparseOperator:
    return build_effective(params) if kind == "effective" else build_system(params)


def _track_overlap(
    propagator: _PiecewisePropagator, a: np.ndarray, omega: float, times: np.ndarray
) -> np.ndarray:
    norm = np.vdot(a, a).real
    if times[0] != 0:
        u = propagator.step(0.0, float(times[0]))
    else:
        u = np.eye(a.shape[0], dtype=np.complex128)
    values = np.empty(times.size, dtype=np.complex128)
    for i, t in enumerate(times):
        if i > 0:
            u = propagator.step(float(times[i - 1]), float(t)) @ u
        evolved = u.conj().T @ a @ u
        values[i] = np.exp(-1j * omega * t) * np.vdot(a, evolved) / norm
    return values


def run_error_recovery(
    inj: ErrorInjection,
    params: ModelParams,
    times: np.ndarray,
    j: Optional[int] = None,
    base: Base = "effective",
    relax: Base = "system",
) -> RecoveryReport:
    """Track c(t) = hs(e^{i omega t} A_2, A_2(t)) / hs(A_2, A_2) through an error window.

    A_2(t) = U^dagger(t) A_2 U(t) with U the piecewise-constant propagator of
    H_base up to t0, H_base + eps E on [t0, t1] and H_relax after t1. The same
    schedule with eps = 0 gives the baseline c_0(t); the report works with the
    relative magnitude 1 - (|c_0| - |c|), so decay that H_relax causes on its
    own is not counted as damage.

    The run counts as recovered only when the plateau of the relative
    magnitude rises above both the in-window minimum and its value at t1 by
    more than REBOUND_TOLERANCE. Under H'_eff after the window the overlap is
    frozen and the flag stays False.

    Args:
        base: Hamiltonian before and during the window
        relax: Hamiltonian after the window ("system" thermalizes)

    Raises:
        ValueError: Error window outside the grid
        EdgeSiteError: j not interior
    """
    times = check_grid(times)
    t0, t1 = inj.window
    if t0 < times[0] or t1 > times[-1]:
        raise ValueError(f"Error window {inj.window} lies outside [{times[0]}, {times[-1]}]")

    sp = spin_params(params)
    spec = sp.spec
    j = j if j is not None else (spec.n_sites + 1) // 2
    check_interior(j, spec.n_sites)

    h_base = _base_hamiltonian(base, sp)
    base_eig = dense_eig(h_base)
    relax_eig = base_eig if relax == base else dense_eig(_base_hamiltonian(relax, sp))
    a = seed_operator(2, j, spec).to_dense()
    omega = seed_frequency(2, j, sp)

    unperturbed = _PiecewisePropagator(base_eig, relax_eig, inj.window)
    baseline_values = _track_overlap(unperturbed, a, omega, times)
    if inj.amplitude != 0:
        perturbed = SparseOperator((h_base + inj.amplitude * inj.error_op).raw, hermitian="yes")
        propagator = _PiecewisePropagator(base_eig, relax_eig, inj.window, dense_eig(perturbed))
        values = _track_overlap(propagator, a, omega, times)
    else:
        values = baseline_values.copy()

    rel = 1.0 - (np.abs(baseline_values) - np.abs(values))
    before = rel[times < t0]
    during = rel[(times >= t0) & (times <= t1)]
    end = max(int(np.searchsorted(times, t1, side="right")) - 1, 0)
    cutoff = times[-1] - PLATEAU_FRACTION * (times[-1] - times[0])
    tail = rel[(times > t1) & (times >= cutoff)]

    min_before = float(before.min()) if before.size else 1.0
    window_end = float(rel[end])
    min_during = float(during.min()) if during.size else window_end
    plateau = float(tail.mean()) if tail.size else float(rel[-1])
    width = max(t1 - t0, 1e-12)
    degradation = float(np.max(1.0 - rel[times >= t0]) / width)
    recovered = plateau > max(min_during, window_end) + REBOUND_TOLERANCE

    meta = {"site": j, "omega": omega, "error": inj.label, "amplitude": inj.amplitude}
    overlap = CorrelationSeries(times=times, values=values, method="overlap", meta=meta)
    baseline = CorrelationSeries(
        times=times, values=baseline_values, method="overlap", meta={**meta, "amplitude": 0.0}
    )
    logger.info(
        f"Error '{inj.label}' ({inj.error_class}, eps={inj.amplitude}, {base} -> {relax}): "
        f"min during {min_during:.6f}, at t1 {window_end:.6f}, plateau {plateau:.6f}, "
        f"recovered {recovered}"
    )
    return RecoveryReport(
        injection=inj,
        overlap=overlap,
        baseline=baseline,
        min_before=min_before,
        min_during=min_during,
        window_end=window_end,
        plateau=plateau,
        recovered=bool(recovered),
        degradation=degradation,
        base=base,
        relax=relax,
    )


def degradation_vs_tilt(
    make_error: str,
    tilts: list[float],
    params: ModelParams,
    amplitude: float,
    window: tuple[float, float],
    times: np.ndarray,
    j: Optional[int] = None,
    relax: Base = "effective",
) -> dict[float, float]:
    """Degradation of A_2 under the same error for several tilt strengths.

    With the default relax the damage left by the window is frozen, so the
    number only depends on the error and the tilt.

    Args:
        make_error: "flip", "dephasing" or "uniform"
    """
    spec = params.spec.spin_only()
    site = j if j is not None else (spec.n_sites + 1) // 2
    factories = {
        "flip": lambda: flip_error(site, spec),
        "dephasing": lambda: dephasing_error(site, spec),
        "uniform": lambda: uniform_field_error(spec),
    }
    if make_error not in factories:
        raise ValueError(f"Unknown error kind: {make_error!r}")

    out: dict[float, float] = {}
    for w in tilts:
        p = params.replace(W=w)
        inj = build_injection(factories[make_error](), amplitude, window, p, label=make_error)
        out[w] = run_error_recovery(inj, p, times, j=site, relax=relax).degradation
    return out
