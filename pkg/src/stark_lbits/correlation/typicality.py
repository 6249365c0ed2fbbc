"""Random-state (dynamical typicality) estimate of fluctuation functions."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Optional, Sequence

import numpy as np

from stark_lbits.config import settings
from stark_lbits.correlation.fluctuation import check_grid
from stark_lbits.hilbert import OperatorSpecError, SparseOperator
from stark_lbits.propagation import KrylovParams, evolve_state
from stark_lbits.schemas.results import CorrelationSeries

logger = logging.getLogger(__name__)


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unit vector from complex Gaussian components."""
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


def _sample(
    qs: Sequence[SparseOperator],
    b: SparseOperator,
    h: SparseOperator,
    times: np.ndarray,
    seed_seq: np.random.SeedSequence,
    kp: KrylovParams,
) -> np.ndarray:
    """One random vector's estimate for every Q, shape (len(qs), len(times))."""
    rng = np.random.default_rng(seed_seq)
    psi = random_state(rng, h.dim)

    u_psi = psi
    u_b_psi = b.apply(psi)
    u_bd_psi = None if b.is_hermitian else b.dag().apply(psi)

    out = np.empty((len(qs), times.size), dtype=np.complex128)
    previous = 0.0
    for k, t in enumerate(times):
        step = float(t) - previous
        if step != 0.0:
            u_psi = evolve_state(h, u_psi, step, kp)
            u_b_psi = evolve_state(h, u_b_psi, step, kp)
            if u_bd_psi is not None:
                u_bd_psi = evolve_state(h, u_bd_psi, step, kp)
        previous = float(t)
        left = u_b_psi if u_bd_psi is None else u_bd_psi
        for i, q in enumerate(qs):
            term_qb = np.vdot(u_psi, q.apply(u_b_psi))
            term_bq = np.vdot(left, q.apply(u_psi))
            out[i, k] = (term_qb + term_bq) / 2
    return out


def fluctuation_typicality_many(
    qs: Sequence[SparseOperator],
    b: SparseOperator,
    h: SparseOperator,
    times: np.ndarray,
    samples: int,
    seed: int,
    kp: Optional[KrylovParams] = None,
    meta: Optional[dict[str, Any]] = None,
) -> list[CorrelationSeries]:
    """Typicality estimates for several Q sharing one B and one set of random vectors.

    Per random vector psi the estimator is
    [<U psi| Q |U B psi> + <U B^dagger psi| Q |U psi>] / 2, which averages to
    Tr(Q(t) B + B Q(t)) / (2 dim). Each sample draws from its own stream
    spawned from the master seed, so results do not depend on scheduling.

    Raises:
        ValueError: samples < 1
        OperatorSpecError: Operator dimensions differ
        KrylovConvergenceError: Propagated from the Krylov engine
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    for op in (*qs, b):
        if op.dim != h.dim:
            raise OperatorSpecError(f"Dimension mismatch: {op.dim} vs {h.dim}")
    times = check_grid(times)
    kp = kp or KrylovParams()

    streams = np.random.SeedSequence(seed).spawn(samples)
    logger.info(f"Typicality: {samples} samples, dim={h.dim}, {times.size} time points")

    if settings.enable_parallel_samples and samples > 1:
        with ThreadPoolExecutor(max_workers=settings.max_workers) as pool:
            results = list(pool.map(lambda s: _sample(qs, b, h, times, s, kp), streams))
    else:
        results = [_sample(qs, b, h, times, s, kp) for s in streams]

    stacked = np.stack(results, axis=1)  # (len(qs), R, T)
    series = []
    for i in range(len(qs)):
        per_sample = stacked[i]
        mean = per_sample.mean(axis=0)
        if samples > 1:
            spread = np.std(per_sample.real, axis=0, ddof=1) + 1j * np.std(per_sample.imag, axis=0, ddof=1)
            stderr = np.abs(spread) / np.sqrt(samples)
        else:
            stderr = np.zeros(times.size)
        series.append(
            CorrelationSeries(
                times=times,
                values=mean,
                method="typicality",
                samples=samples,
                seed=seed,
                stderr=stderr,
                per_sample=per_sample,
                meta=dict(meta or {}),
            )
        )
    return series


def fluctuation_typicality(
    q: SparseOperator,
    b: SparseOperator,
    h: SparseOperator,
    times: np.ndarray,
    samples: int,
    seed: int,
    kp: Optional[KrylovParams] = None,
    meta: Optional[dict[str, Any]] = None,
) -> CorrelationSeries:
    """Typicality estimate of F_QB(t) for a single Q."""
    return fluctuation_typicality_many([q], b, h, times, samples, seed, kp, meta)[0]
