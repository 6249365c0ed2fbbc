"""Time evolution: exact eigenbasis propagation and Lanczos sub-stepping."""

from stark_lbits.propagation.dense import (
    DenseCeilingError,
    EigenDecomposition,
    NonHermitianError,
    check_dense_feasible,
    dense_eig,
    heisenberg_from_eigenbasis,
    heisenberg_op,
)
from stark_lbits.propagation.krylov import (
    KrylovConvergenceError,
    KrylovParams,
    evolve_along_grid,
    evolve_state,
)

__all__ = [
    "DenseCeilingError",
    "EigenDecomposition",
    "KrylovConvergenceError",
    "KrylovParams",
    "NonHermitianError",
    "check_dense_feasible",
    "dense_eig",
    "evolve_along_grid",
    "evolve_state",
    "heisenberg_from_eigenbasis",
    "heisenberg_op",
]
