from fractions import Fraction

from hypothesis import given, settings
import pytest
import sympy

from ambientkit.exceptions import ShapeMismatch
from ambientkit.linalg import (
    ExactMatrix,
    certify_exactness,
    compose,
    kernel_basis,
    rank,
    reduced_row_echelon,
)
from ambientkit.linalg import elimination

from tests.helpers import dense_matrices


def _sympy(m: ExactMatrix):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(
        m[i, j].numerator, m[i, j].denominator
    ))


def test_rref_small():
    m = ExactMatrix.from_dense([[2, 4, 6], [1, 2, 4]])
    echelon = reduced_row_echelon(m)
    assert echelon.rank == 2
    assert echelon.pivots == (0, 2)
    assert echelon.matrix.to_dense() == [[1, 2, 0], [0, 0, 1]]


def test_rank_zero_matrix():
    assert rank(ExactMatrix.zero(3, 4)) == 0
    assert len(kernel_basis(ExactMatrix.zero(3, 4))) == 4


def test_kernel_of_empty_domain():
    basis = kernel_basis(ExactMatrix.zero(2, 0))
    assert len(basis) == 0
    assert basis.dimension == 0


def test_kernel_basis_normalised():
    m = ExactMatrix.from_dense([[1, 1, 0], [0, 0, 1]])
    basis = kernel_basis(m)
    assert list(basis) == [(Fraction(1), Fraction(-1), Fraction(0))]


@settings(max_examples=60)
@given(dense_matrices(max_rows=6, max_cols=6))
def test_rank_matches_sympy(m):
    assert rank(m) == _sympy(m).rank()


@settings(max_examples=60)
@given(dense_matrices(max_rows=6, max_cols=6))
def test_rref_matches_sympy(m):
    ours = reduced_row_echelon(m)
    theirs, pivots = _sympy(m).rref()
    assert ours.pivots == tuple(pivots)
    for i in range(ours.rank):
        for j in range(m.cols):
            assert ours.matrix[i, j] == Fraction(str(theirs[i, j]))


@given(dense_matrices())
def test_kernel_vectors_annihilated(m):
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank(m)
    for vector in basis:
        assert not any(m.apply(vector))
        assert next(v for v in vector if v) == 1


@given(dense_matrices(max_rows=5, max_cols=5))
def test_sparse_path_agrees_with_dense(m):
    dense = reduced_row_echelon(m)
    original = elimination.DENSE_LIMIT
    elimination.DENSE_LIMIT = 0
    try:
        sparse = reduced_row_echelon(m)
    finally:
        elimination.DENSE_LIMIT = original
    assert sparse == dense


def test_certify_exactness():
    # 0 -> R -> R^2 -> R -> 0 with inclusion then projection
    incoming = ExactMatrix.from_dense([[1], [0]])
    outgoing = ExactMatrix.from_dense([[0, 1]])
    report = certify_exactness(incoming, outgoing)
    assert report.is_complex
    assert report.rank_in == 1
    assert report.nullity_out == 1
    assert report.exact


def test_certify_not_a_complex():
    incoming = ExactMatrix.from_dense([[1], [1]])
    outgoing = ExactMatrix.from_dense([[0, 1]])
    report = certify_exactness(incoming, outgoing)
    assert not report.is_complex
    assert not report.exact


def test_certify_homology():
    incoming = ExactMatrix.zero(2, 1)
    outgoing = ExactMatrix.from_dense([[0, 1]])
    report = certify_exactness(incoming, outgoing)
    assert report.is_complex
    assert (report.rank_in, report.nullity_out) == (0, 1)
    assert not report.exact
    assert report.as_dict()['exact'] is False


def test_certify_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        certify_exactness(ExactMatrix.zero(3, 1), ExactMatrix.zero(1, 2))


def test_large_sparse_rank():
    size = 80
    m = ExactMatrix(size, size, {(i, i): i + 1 for i in range(size - 1)})
    assert rank(m) == size - 1
    assert compose(m, ExactMatrix.identity(size)) == m
