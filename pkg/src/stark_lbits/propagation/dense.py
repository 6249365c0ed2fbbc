"""Exact propagation through a full eigendecomposition."""

import logging
from typing import Optional

import numpy as np
import scipy.linalg as la
from pydantic import BaseModel, ConfigDict, Field

from stark_lbits.config import settings
from stark_lbits.hilbert import OperatorSpecError, SparseOperator

logger = logging.getLogger(__name__)


class NonHermitianError(ValueError):
    """Raised when a Hermitian generator is required."""


class DenseCeilingError(ValueError):
    """Raised when a dense method is asked to exceed the configured dimension."""


def check_dense_feasible(dim: int, ceiling: Optional[int] = None) -> None:
    limit = settings.dense_ceiling if ceiling is None else ceiling
    if dim > limit:
        raise DenseCeilingError(f"Dimension {dim} exceeds dense ceiling {limit}")


class EigenDecomposition(BaseModel):
    """H = V diag(E) V^dagger with ascending energies."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    energies: np.ndarray = Field(description="Ascending real eigenvalues")
    vectors: np.ndarray = Field(description="Unitary matrix, eigenvectors as columns")
    source_dim: int = Field(ge=1)

    def _check(self, dim: int) -> None:
        if dim != self.source_dim:
            raise OperatorSpecError(f"Dimension mismatch: {dim} vs {self.source_dim}")

    def to_eigenbasis(self, op: SparseOperator) -> np.ndarray:
        """V^dagger A V as a dense array."""
        self._check(op.dim)
        return self.vectors.conj().T @ op.apply(self.vectors)

    def from_eigenbasis(self, mat: np.ndarray) -> np.ndarray:
        """V A V^dagger."""
        return self.vectors @ mat @ self.vectors.conj().T

    def propagate(self, psi: np.ndarray, t: float) -> np.ndarray:
        """e^{-iHt} psi."""
        self._check(psi.shape[0])
        coeffs = self.vectors.conj().T @ psi
        phases = np.exp(-1j * self.energies * t)
        if coeffs.ndim == 2:
            phases = phases[:, None]
        return self.vectors @ (phases * coeffs)

    def unitary(self, t: float) -> np.ndarray:
        """Dense propagator e^{-iHt}."""
        return (self.vectors * np.exp(-1j * self.energies * t)) @ self.vectors.conj().T

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.energies) @ self.vectors.conj().T

    def gaps(self) -> np.ndarray:
        """Matrix of E_m - E_n."""
        return self.energies[:, None] - self.energies[None, :]


def dense_eig(h: SparseOperator, ceiling: Optional[int] = None) -> EigenDecomposition:
    """Full spectrum and orthonormal eigenbasis of a Hermitian operator.

    Raises:
        NonHermitianError: h is not Hermitian to tolerance
        DenseCeilingError: dim above the dense ceiling
    """
    check_dense_feasible(h.dim, ceiling)
    if not h.is_hermitian:
        raise NonHermitianError(
            f"Operator is not Hermitian (max |H - H+| = {h.hermiticity_residual():.3e})"
        )

    logger.info(f"Diagonalizing dim={h.dim}")
    mat = h.to_dense()
    mat = (mat + mat.conj().T) / 2
    energies, vectors = la.eigh(mat)
    return EigenDecomposition(energies=energies, vectors=vectors, source_dim=h.dim)


def heisenberg_op(q: SparseOperator, eig: EigenDecomposition, t: float) -> SparseOperator:
    """U^dagger(t) Q U(t) with U(t) = e^{-iHt}.

    Evaluated as Q~_mn e^{i(E_m - E_n)t} in the eigenbasis.
    """
    q_eig = eig.to_eigenbasis(q)
    return heisenberg_from_eigenbasis(q_eig, eig, t, hermitian=q.hermitian)


def heisenberg_from_eigenbasis(
    q_eig: np.ndarray, eig: EigenDecomposition, t: float, hermitian: str = "unknown"
) -> SparseOperator:
    """Heisenberg operator from a precomputed eigenbasis representation."""
    phase = np.exp(1j * eig.energies * t)
    evolved = phase[:, None] * q_eig * phase.conj()[None, :]
    herm = "yes" if hermitian == "yes" else "unknown"
    return SparseOperator(eig.from_eigenbasis(evolved), hermitian=herm)  # type: ignore[arg-type]
