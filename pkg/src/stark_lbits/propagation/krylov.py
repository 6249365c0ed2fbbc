"""Lanczos propagation e^{-iHt} psi for spaces too large to diagonalize."""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy.linalg import eigh_tridiagonal

from stark_lbits.config import settings
from stark_lbits.hilbert import OperatorSpecError, SparseOperator

logger = logging.getLogger(__name__)

# relative size of the residual that counts as an invariant subspace
_BREAKDOWN = 1e-13
# successive halvings of one sub-step before giving up
_MAX_HALVINGS = 40


class KrylovConvergenceError(RuntimeError):
    """Raised when the step budget is exhausted before reaching the target time."""


class KrylovParams(BaseModel):
    """Krylov propagation controls."""

    subspace_dim: int = Field(default_factory=lambda: settings.krylov_subspace_dim, ge=2)
    dt: float = Field(default_factory=lambda: settings.krylov_dt, gt=0)
    tolerance: float = Field(default_factory=lambda: settings.krylov_tolerance, gt=0)
    max_substeps: int = Field(default_factory=lambda: settings.krylov_max_substeps, ge=1)


class _LanczosBasis:
    """Orthonormal Krylov basis of one start vector with its tridiagonal projection."""

    def __init__(self, h: SparseOperator, psi: np.ndarray, m: int) -> None:
        self.norm = float(np.linalg.norm(psi))
        dim = psi.shape[0]
        m = min(m, dim)
        basis = np.zeros((m, dim), dtype=np.complex128)
        alpha = np.zeros(m)
        beta = np.zeros(m)
        basis[0] = psi / self.norm
        size = m
        h_norm_scale = max(1.0, h.max_abs())

        for k in range(m):
            w = h.apply(basis[k])
            alpha[k] = np.vdot(basis[k], w).real
            w = w - alpha[k] * basis[k]
            if k > 0:
                w = w - beta[k - 1] * basis[k - 1]
            # full reorthogonalization against the whole basis
            w = w - basis[: k + 1].T @ (basis[: k + 1].conj() @ w)
            b = float(np.linalg.norm(w))
            beta[k] = b
            if b < _BREAKDOWN * h_norm_scale:
                size = k + 1
                beta[k] = 0.0
                break
            if k + 1 < m:
                basis[k + 1] = w / b

        self.size = size
        self.basis = basis[:size]
        self.residual = beta[size - 1] if size == m else 0.0
        if size == 1:
            self.theta = alpha[:1].copy()
            self.vecs = np.ones((1, 1))
        else:
            self.theta, self.vecs = eigh_tridiagonal(alpha[:size], beta[: size - 1])

    def coefficients(self, tau: float) -> np.ndarray:
        """Subspace coefficients of e^{-i T tau} e_1."""
        return self.vecs @ (np.exp(-1j * self.theta * tau) * self.vecs[0])

    def error(self, tau: float) -> float:
        """Local error estimate beta_m |last coefficient| ||psi||."""
        if self.residual == 0.0:
            return 0.0
        return float(self.residual * abs(self.coefficients(tau)[-1]) * self.norm)

    def apply(self, tau: float) -> np.ndarray:
        return self.norm * (self.basis.T @ self.coefficients(tau))


def evolve_state(
    h: SparseOperator,
    psi: np.ndarray,
    t: float,
    kp: Optional[KrylovParams] = None,
) -> np.ndarray:
    """e^{-iHt} psi by adaptive Lanczos sub-stepping.

    Each sub-step starts at ``kp.dt`` (or the remaining time) and is halved
    until the local error estimate drops below ``kp.tolerance``.

    Raises:
        KrylovConvergenceError: Step budget exhausted or a sub-step cannot be
            made small enough
    """
    kp = kp or KrylovParams()
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (h.dim,):
        raise OperatorSpecError(f"State shape {psi.shape} does not match dim {h.dim}")
    if t == 0 or not np.any(psi):
        return psi.copy()

    direction = 1.0 if t > 0 else -1.0
    remaining = abs(t)
    steps = 0
    while remaining > 1e-15 * max(1.0, abs(t)):
        basis = _LanczosBasis(h, psi, kp.subspace_dim)
        step = min(kp.dt, remaining)
        if basis.residual == 0.0:
            # invariant subspace: exact for any step
            step = remaining
        halvings = 0
        while basis.error(direction * step) > kp.tolerance:
            step /= 2
            halvings += 1
            if halvings > _MAX_HALVINGS:
                raise KrylovConvergenceError(
                    f"Sub-step below {step:.3e} still misses tolerance {kp.tolerance:.1e}"
                )
        if halvings:
            logger.debug(f"Krylov sub-step halved {halvings}x to {step:.3e}")

        psi = basis.apply(direction * step)
        remaining -= step
        steps += 1
        if steps > kp.max_substeps and remaining > 0:
            raise KrylovConvergenceError(
                f"Exhausted {kp.max_substeps} sub-steps with {remaining:.3e} time left"
            )
    return psi


def evolve_along_grid(
    h: SparseOperator,
    psi: np.ndarray,
    times: np.ndarray,
    kp: Optional[KrylovParams] = None,
) -> np.ndarray:
    """States e^{-iHt} psi at every grid time, shape (len(times), dim).

    The grid must be non-decreasing; the first point may be non-zero.
    """
    times = np.asarray(times, dtype=np.float64)
    out = np.empty((times.size, h.dim), dtype=np.complex128)
    current = evolve_state(h, psi, float(times[0]), kp) if times.size else psi
    previous = float(times[0]) if times.size else 0.0
    for i, t in enumerate(times):
        if i > 0:
            current = evolve_state(h, current, float(t) - previous, kp)
            previous = float(t)
        out[i] = current
    return out
