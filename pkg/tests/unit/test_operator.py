"""Unit tests for the SparseOperator carrier."""

import numpy as np
import pytest
import scipy.sparse as sp

from stark_lbits.hilbert import OperatorSpecError, SparseOperator
from stark_lbits.hilbert.operator import as_operator, frobenius_distance


def test_non_square_rejected():
    with pytest.raises(OperatorSpecError):
        SparseOperator(np.zeros((2, 3)))
    with pytest.raises(OperatorSpecError):
        SparseOperator(sp.csr_matrix((2, 3)))


def test_tiny_entries_are_pruned():
    mat = sp.csr_matrix(np.array([[1.0, 1e-18], [0.0, 2.0]]))
    op = SparseOperator(mat)
    assert op.to_sparse().nnz == 2


def test_dense_storage_is_read_only():
    op = SparseOperator(np.eye(2))
    with pytest.raises(ValueError):
        op.to_dense()[0, 0] = 5.0


def test_mixed_dense_sparse_algebra():
    dense = SparseOperator(np.array([[0.0, 1.0], [1.0, 0.0]]))
    sparse = SparseOperator.diagonal(np.array([1.0, -1.0]))
    comm = dense.commutator(sparse).to_dense()
    assert np.allclose(comm, [[0, -2], [2, 0]])
    assert np.allclose((dense + sparse).to_dense(), [[1, 1], [1, -1]])


def test_scalar_multiplication_keeps_hermiticity():
    op = SparseOperator.identity(3)
    assert (2.5 * op).hermitian == "yes"
    assert (1j * op).is_hermitian is False


def test_dag_and_trace():
    op = SparseOperator(np.array([[1.0, 2j], [0.0, 3.0]]))
    assert np.allclose(op.dag().to_dense(), [[1, 0], [-2j, 3]])
    assert op.trace() == pytest.approx(4.0)


def test_norms():
    op = SparseOperator(np.array([[3.0, 0.0], [0.0, -4.0]]))
    assert op.frobenius_norm() == pytest.approx(5.0)
    assert op.max_abs() == pytest.approx(4.0)
    assert frobenius_distance(op, op) == pytest.approx(0.0)


def test_restrict_takes_sub_block():
    op = SparseOperator.diagonal(np.arange(4.0))
    block = op.restrict(np.array([1, 3]))
    assert np.allclose(block.to_dense(), np.diag([1.0, 3.0]))


def test_dimension_mismatch():
    with pytest.raises(OperatorSpecError):
        SparseOperator.identity(2) + SparseOperator.identity(3)


def test_as_operator_passthrough():
    op = SparseOperator.identity(2)
    assert as_operator(op) is op
    assert as_operator(np.eye(2)).dim == 2
