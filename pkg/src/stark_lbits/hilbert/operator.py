"""Operator carrier shared by every module."""

import logging
from typing import Literal, Optional, Union

import numpy as np
import scipy.sparse as sp

from stark_lbits.config import settings

logger = logging.getLogger(__name__)

Hermiticity = Literal["yes", "no", "unknown"]
Scalar = Union[int, float, complex]


class OperatorSpecError(ValueError):
    """Raised when an operator is built against an incompatible space."""


def _prune(mat: sp.csr_matrix) -> sp.csr_matrix:
    mat = mat.tocsr().astype(np.complex128)
    mat.data[np.abs(mat.data) < settings.sparse_prune] = 0
    mat.eliminate_zeros()
    return mat


class SparseOperator:
    """Complex operator on the full chain space.

    Holds either a CSR matrix or a read-only dense array. Instances are never
    mutated after construction, so they can be shared across threads.
    """

    __slots__ = ("_mat", "_hermitian")

    def __init__(
        self,
        mat: Union[sp.spmatrix, sp.sparray, np.ndarray],
        hermitian: Hermiticity = "unknown",
    ) -> None:
        if isinstance(mat, np.ndarray):
            if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                raise OperatorSpecError(f"Operator must be square, got shape {mat.shape}")
            arr = np.array(mat, dtype=np.complex128, copy=True)
            arr.setflags(write=False)
            self._mat: Union[sp.csr_matrix, np.ndarray] = arr
        else:
            if mat.shape[0] != mat.shape[1]:
                raise OperatorSpecError(f"Operator must be square, got shape {mat.shape}")
            self._mat = _prune(sp.csr_matrix(mat))
        self._hermitian: Hermiticity = hermitian

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, dim: int) -> "SparseOperator":
        return cls(sp.identity(dim, dtype=np.complex128, format="csr"), hermitian="yes")

    @classmethod
    def zeros(cls, dim: int) -> "SparseOperator":
        return cls(sp.csr_matrix((dim, dim), dtype=np.complex128), hermitian="yes")

    @classmethod
    def diagonal(cls, values: np.ndarray) -> "SparseOperator":
        values = np.asarray(values)
        herm: Hermiticity = "yes" if np.all(np.isreal(values)) else "unknown"
        return cls(sp.diags(values.astype(np.complex128), format="csr"), hermitian=herm)

    # -- properties -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return int(self._mat.shape[0])

    @property
    def is_dense(self) -> bool:
        return isinstance(self._mat, np.ndarray)

    @property
    def hermitian(self) -> Hermiticity:
        """Lazily resolved Hermiticity flag."""
        if self._hermitian == "unknown":
            residual = self.hermiticity_residual()
            self._hermitian = "yes" if residual < settings.hermitian_tolerance else "no"
        return self._hermitian

    @property
    def is_hermitian(self) -> bool:
        return self.hermitian == "yes"

    def hermiticity_residual(self) -> float:
        """Largest entrywise |A - A^dagger|."""
        diff = self._mat - self._mat.conj().T
        if sp.issparse(diff):
            return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
        return float(np.max(np.abs(diff))) if diff.size else 0.0

    # -- conversions ----------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        """Dense complex128 copy (read-only view when already dense)."""
        if isinstance(self._mat, np.ndarray):
            return self._mat
        return np.asarray(self._mat.toarray())

    def to_sparse(self) -> sp.csr_matrix:
        if isinstance(self._mat, np.ndarray):
            return _prune(sp.csr_matrix(self._mat))
        return self._mat

    @property
    def raw(self) -> Union[sp.csr_matrix, np.ndarray]:
        """Underlying storage, for backends that accept either form."""
        return self._mat

    def diag(self) -> np.ndarray:
        if isinstance(self._mat, np.ndarray):
            return np.diag(self._mat).copy()
        return np.asarray(self._mat.diagonal())

    # -- algebra --------------------------------------------------------------

    def _check(self, other: "SparseOperator") -> None:
        if other.dim != self.dim:
            raise OperatorSpecError(f"Dimension mismatch: {self.dim} vs {other.dim}")

    @staticmethod
    def _wrap(result: Union[sp.spmatrix, np.ndarray], hermitian: Hermiticity = "unknown") -> "SparseOperator":
        if sp.issparse(result):
            return SparseOperator(result, hermitian=hermitian)
        return SparseOperator(np.asarray(result), hermitian=hermitian)

    def dag(self) -> "SparseOperator":
        herm = self._hermitian
        return self._wrap(self._mat.conj().T, hermitian=herm)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        herm: Hermiticity = "yes" if self._hermitian == other._hermitian == "yes" else "unknown"
        return self._wrap(self._mat + other._mat, hermitian=herm)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        herm: Hermiticity = "yes" if self._hermitian == other._hermitian == "yes" else "unknown"
        return self._wrap(self._mat - other._mat, hermitian=herm)

    def __neg__(self) -> "SparseOperator":
        return self._wrap(-self._mat, hermitian=self._hermitian)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        return self._wrap(self._mat @ other._mat)

    def __mul__(self, scalar: Scalar) -> "SparseOperator":
        if not np.isscalar(scalar):
            return NotImplemented
        herm: Hermiticity = "unknown"
        if self._hermitian == "yes" and np.isreal(scalar):
            herm = "yes"
        return self._wrap(self._mat * scalar, hermitian=herm)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "SparseOperator":
        return self * (1.0 / scalar)

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Matrix-vector (or matrix-matrix) product."""
        return np.asarray(self._mat @ psi)

    def commutator(self, other: "SparseOperator") -> "SparseOperator":
        """[self, other]."""
        return self @ other - other @ self

    def trace(self) -> complex:
        return complex(self.diag().sum())

    def frobenius_norm(self) -> float:
        if isinstance(self._mat, np.ndarray):
            return float(np.linalg.norm(self._mat))
        return float(np.sqrt(np.sum(np.abs(self._mat.data) ** 2)))

    def max_abs(self) -> float:
        """Largest entrywise modulus."""
        if isinstance(self._mat, np.ndarray):
            return float(np.max(np.abs(self._mat))) if self._mat.size else 0.0
        return float(np.max(np.abs(self._mat.data))) if self._mat.nnz else 0.0

    def restrict(self, indices: np.ndarray) -> "SparseOperator":
        """Block on a subset of basis states."""
        idx = np.asarray(indices)
        if isinstance(self._mat, np.ndarray):
            return SparseOperator(self._mat[np.ix_(idx, idx)], hermitian=self._hermitian)
        return SparseOperator(self._mat[idx][:, idx], hermitian=self._hermitian)

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else f"csr nnz={self._mat.nnz}"
        return f"SparseOperator(dim={self.dim}, {kind}, hermitian={self._hermitian})"


def frobenius_distance(a: SparseOperator, b: SparseOperator) -> float:
    """||a - b||_F."""
    return (a - b).frobenius_norm()


def as_operator(mat: Union[SparseOperator, sp.spmatrix, np.ndarray], hermitian: Optional[Hermiticity] = None) -> SparseOperator:
    """Wrap raw matrices, pass operators through."""
    if isinstance(mat, SparseOperator):
        return mat
    return SparseOperator(mat, hermitian=hermitian or "unknown")
