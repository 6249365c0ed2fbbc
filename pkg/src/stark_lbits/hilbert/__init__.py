"""Single-site algebra, tensor embedding and Hilbert-Schmidt products."""

from stark_lbits.hilbert.embedding import boson_op, embed, hs_inner, hs_norm, spin_op, spin_product
from stark_lbits.hilbert.local import boson_matrix, spin_matrix
from stark_lbits.hilbert.operator import OperatorSpecError, SparseOperator

__all__ = [
    "OperatorSpecError",
    "SparseOperator",
    "boson_matrix",
    "boson_op",
    "embed",
    "hs_inner",
    "hs_norm",
    "spin_matrix",
    "spin_op",
    "spin_product",
]
