"""Infinite-temperature fluctuation functions from an eigendecomposition."""

import logging
from typing import Any, Optional

import numpy as np

from stark_lbits.hilbert import OperatorSpecError, SparseOperator
from stark_lbits.propagation import EigenDecomposition
from stark_lbits.schemas.results import CorrelationSeries

logger = logging.getLogger(__name__)

# time points evaluated per batched matrix product
_TIME_CHUNK = 64


class GridError(ValueError):
    """Raised for malformed time grids."""


def make_grid(dt: float, t_max: float, t_min: float = 0.0) -> np.ndarray:
    """Uniform grid t_min, t_min + dt, ..., t_max (inclusive)."""
    if dt <= 0:
        raise GridError(f"dt must be positive, got {dt}")
    if t_max <= t_min:
        raise GridError(f"t_max must exceed t_min, got [{t_min}, {t_max}]")
    n = int(np.floor((t_max - t_min) / dt + 1e-9)) + 1
    return t_min + dt * np.arange(n)


def check_grid(times: np.ndarray) -> np.ndarray:
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise GridError("Time grid must be a non-empty 1-D array")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise GridError("Time grid must be strictly increasing")
    return times


def fluctuation_exact(
    q: SparseOperator,
    b: SparseOperator,
    eig: EigenDecomposition,
    times: np.ndarray,
    meta: Optional[dict[str, Any]] = None,
) -> CorrelationSeries:
    """F_QB(t) = Tr(Q(t) B + B Q(t)) / (2 dim) in the maximally mixed state.

    Both traces equal Tr(Q(t) B) / dim by cyclicity. With M = Q~ o B~^T in the
    eigenbasis, F(t) = u(t)^T M u(t)^* / dim where u(t) = e^{iEt}, so the whole
    grid costs one basis change of Q and B.

    Raises:
        OperatorSpecError: Operator dimensions differ
    """
    if q.dim != b.dim:
        raise OperatorSpecError(f"Dimension mismatch: {q.dim} vs {b.dim}")
    times = check_grid(times)

    q_eig = eig.to_eigenbasis(q)
    b_eig = eig.to_eigenbasis(b)
    kernel = q_eig * b_eig.T

    values = np.empty(times.size, dtype=np.complex128)
    for start in range(0, times.size, _TIME_CHUNK):
        chunk = times[start : start + _TIME_CHUNK]
        u = np.exp(1j * np.outer(chunk, eig.energies))
        values[start : start + chunk.size] = np.einsum("tm,tm->t", u @ kernel, u.conj())
    values /= q.dim

    logger.info(f"Exact fluctuation function on {times.size} points (dim={q.dim})")
    return CorrelationSeries(times=times, values=values, method="exact", meta=meta or {})
