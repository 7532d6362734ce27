from fractions import Fraction

from hypothesis import given
import pytest

from ambientkit.exceptions import ShapeMismatch
from ambientkit.linalg import ExactMatrix, compose, stack

from tests.helpers import dense_matrices


def test_zero_entries_not_stored():
    m = ExactMatrix(2, 2, {(0, 0): 1, (1, 1): 0})
    assert m.nnz() == 1
    m[0, 0] = 0
    assert m.is_zero()


def test_entries_are_fractions():
    m = ExactMatrix.from_dense([[1, Fraction(1, 3)], [0, 2]])
    assert m[0, 1] == Fraction(1, 3)
    assert isinstance(m[1, 1], Fraction)
    assert m[1, 0] == 0


def test_index_out_of_range():
    m = ExactMatrix.zero(2, 3)
    with pytest.raises(IndexError):
        m[2, 0]
    with pytest.raises(IndexError):
        m[0, 3] = 1


def test_compose():
    a = ExactMatrix.from_dense([[1, 2], [3, 4]])
    b = ExactMatrix.from_dense([[0, 1], [1, 0]])
    assert compose(a, b).to_dense() == [[2, 1], [4, 3]]
    assert (a @ b) == compose(a, b)


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        compose(ExactMatrix.zero(2, 3), ExactMatrix.zero(2, 3))


def test_compose_with_empty():
    # maps into or out of a 0-dimensional space
    a = ExactMatrix.zero(3, 0)
    b = ExactMatrix.zero(0, 4)
    product = compose(a, b)
    assert product.shape == (3, 4)
    assert product.is_zero()


@given(dense_matrices())
def test_identity_is_neutral(m):
    assert compose(ExactMatrix.identity(m.rows), m) == m
    assert compose(m, ExactMatrix.identity(m.cols)) == m


@given(dense_matrices())
def test_transpose_twice(m):
    assert m.transpose().transpose() == m


@given(dense_matrices())
def test_add_sub(m):
    assert (m - m).is_zero()
    assert m + m == m.scaled(2)
    assert -m == m.scaled(-1)


def test_block():
    one = ExactMatrix.identity(2)
    empty_rows = ExactMatrix.zero(0, 2)
    m = ExactMatrix.block([[one, one.scaled(2)], [empty_rows, empty_rows]])
    assert m.shape == (2, 4)
    assert m.to_dense() == [[1, 0, 2, 0], [0, 1, 0, 2]]


def test_block_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        ExactMatrix.block([[ExactMatrix.zero(2, 2), ExactMatrix.zero(3, 2)]])


def test_stack():
    m = stack([ExactMatrix.from_dense([[1, 0]]), ExactMatrix.from_dense([[0, 1]])])
    assert m == ExactMatrix.identity(2)


def test_apply():
    m = ExactMatrix.from_dense([[1, 2], [0, Fraction(1, 2)]])
    assert m.apply([1, 4]) == [9, 2]
    with pytest.raises(ShapeMismatch):
        m.apply([1])


def test_triplets():
    m = ExactMatrix.from_dense([[0, Fraction(-1, 2)], [3, 0]])
    assert m.triplets() == [[0, 1, "-1/2"], [1, 0, "3"]]
