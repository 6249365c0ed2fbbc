"""Tensor-product lifts into the chain space and the Hilbert-Schmidt product."""

from typing import Literal, Union

import numpy as np
import scipy.sparse as sp

from stark_lbits.hilbert.local import boson_matrix, spin_matrix
from stark_lbits.hilbert.operator import OperatorSpecError, SparseOperator
from stark_lbits.schemas.model import SpaceSpec

Factor = Literal["spin", "boson"]


def _eye(n: int) -> sp.csr_matrix:
    return sp.identity(n, dtype=np.complex128, format="csr")


def embed(site: int, local_op: np.ndarray, factor: Factor, spec: SpaceSpec) -> SparseOperator:
    """Lift a single-site matrix to the full space.

    Args:
        site: 1-based site index
        local_op: Matrix acting on one spin or boson factor
        factor: Which factor of the site the matrix acts on
        spec: Target space

    Returns:
        I x ... x local_op x ... x I as a sparse operator

    Raises:
        OperatorSpecError: Site out of range, missing boson factor or wrong local dimension
    """
    if not 1 <= site <= spec.n_sites:
        raise OperatorSpecError(f"Site {site} outside chain 1..{spec.n_sites}")

    local_op = np.asarray(local_op, dtype=np.complex128)
    n = spec.n_sites

    if factor == "spin":
        d = spec.spin_levels
    elif factor == "boson":
        if not spec.has_bosons:
            raise OperatorSpecError("Space has no boson factor")
        d = spec.boson_levels
    else:
        raise OperatorSpecError(f"Unknown factor: {factor!r}")

    if local_op.shape != (d, d):
        raise OperatorSpecError(
            f"Local operator shape {local_op.shape} does not match {factor} dimension {d}"
        )

    block = sp.kron(
        sp.kron(_eye(d ** (site - 1)), sp.csr_matrix(local_op), format="csr"),
        _eye(d ** (n - site)),
        format="csr",
    )
    if factor == "spin":
        full = sp.kron(block, _eye(spec.boson_dim), format="csr")
    else:
        full = sp.kron(_eye(spec.spin_dim), block, format="csr")

    herm = "yes" if np.allclose(local_op, local_op.conj().T, atol=1e-14) else "no"
    return SparseOperator(full, hermitian=herm)


def spin_op(kind: str, site: int, spec: SpaceSpec) -> SparseOperator:
    """Embedded spin operator S^kind_site."""
    return embed(site, spin_matrix(kind, spec.spin_levels), "spin", spec)


def boson_op(kind: str, site: int, spec: SpaceSpec) -> SparseOperator:
    """Embedded phonon operator at a site."""
    return embed(site, boson_matrix(kind, spec.boson_levels), "boson", spec)


def spin_product(factors: dict[int, Union[str, np.ndarray]], spec: SpaceSpec) -> SparseOperator:
    """Product of spin operators on distinct sites, e.g. {1: "Sz", 2: "Sp"}."""
    out = SparseOperator.identity(spec.dim)
    for site, kind in sorted(factors.items()):
        local = spin_matrix(kind, spec.spin_levels) if isinstance(kind, str) else kind
        out = out @ embed(site, local, "spin", spec)
    return out


def hs_inner(a: SparseOperator, b: SparseOperator) -> complex:
    """Normalized Hilbert-Schmidt product Tr(A^dagger B) / dim.

    Raises:
        OperatorSpecError: Dimension mismatch
    """
    if a.dim != b.dim:
        raise OperatorSpecError(f"Dimension mismatch: {a.dim} vs {b.dim}")
    if a.is_dense or b.is_dense:
        total = np.vdot(a.to_dense(), b.to_dense())
    else:
        total = a.to_sparse().conj().multiply(b.to_sparse()).sum()
    return complex(total) / a.dim


def hs_norm(a: SparseOperator) -> float:
    """sqrt(hs_inner(a, a))."""
    return float(np.sqrt(max(hs_inner(a, a).real, 0.0)))
