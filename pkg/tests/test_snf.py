import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from twisted_link import as_matrix, integer_kernel, smith_normal_form, solve_integer


@st.composite
def integer_matrices(draw, max_size=6, bound=20):
    rows = draw(st.integers(1, max_size))
    cols = draw(st.integers(1, max_size))
    entries = st.integers(-bound, bound)
    return Matrix(draw(st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)))


def test_small_example():
    result = smith_normal_form(Matrix([[2, 4], [6, 8]]))
    assert result.diagonal == (2, 4)
    assert result.invariant_factors == (2, 4)
    assert result.rank == 2
    assert result.check(Matrix([[2, 4], [6, 8]]))


def test_signs_are_normalized():
    M = Matrix([[0, -2]])
    result = smith_normal_form(M)
    assert result.diagonal == (2,)
    assert result.D == Matrix([[2, 0]])
    assert result.check(M)


def test_rank_deficient():
    M = Matrix([[1, 2, 3], [2, 4, 6]])
    result = smith_normal_form(M)
    assert result.diagonal == (1, 0)
    assert result.rank == 1
    assert result.invariant_factors == ()
    assert result.check(M)


def test_empty():
    M = as_matrix([], (2, 0))
    result = smith_normal_form(M)
    assert result.rank == 0
    assert result.D.shape == (2, 0)


@settings(max_examples=60, deadline=None)
@given(integer_matrices())
def test_smith_form_is_valid(M):
    assert smith_normal_form(M).check(M)


def test_solve_integer():
    A = Matrix([[2, 0], [0, 3]])
    assert solve_integer(A, Matrix([4, 6])) == Matrix([2, 2])
    assert solve_integer(A, Matrix([1, 0])) is None
    tall = Matrix([[1], [1]])
    assert solve_integer(tall, Matrix([2, 3])) is None


def test_integer_kernel():
    K = integer_kernel(Matrix([[1, 1, 0]]))
    assert K.shape == (3, 2)
    assert Matrix([[1, 1, 0]]) * K == Matrix([[0, 0]])
    assert integer_kernel(Matrix([[1, 0], [0, 1]])).shape == (2, 0)


def test_as_matrix_rejects_fractions():
    with pytest.raises(ValueError):
        as_matrix([[1, 0.5]])
