from fractions import Fraction

import pytest  # type: ignore
import sympy  # type: ignore
from hypothesis import given, settings, strategies as st  # type: ignore

from cylab.errors import ShapeMismatch, SingularMatrix
from cylab.exact_linalg import (
    RationalMatrix,
    all_minors_nonzero,
    cofactor_det,
    det,
    invert,
    left_kernel_basis,
    rank,
    rref,
    solve,
    vandermonde_det,
    vandermonde_matrix,
)

small = st.integers(min_value=-9, max_value=9)


def square_matrices(size: int):
    return st.lists(small, min_size=size * size, max_size=size * size).map(
        lambda values: RationalMatrix(size, size, tuple(values))
    )


def to_sympy(matrix: RationalMatrix) -> sympy.Matrix:
    return sympy.Matrix(
        [[sympy.Rational(value.numerator, value.denominator) for value in row] for row in matrix.to_rows()]
    )


def test_matrix_shape_checks():
    with pytest.raises(ShapeMismatch):
        RationalMatrix(2, 2, (1, 2, 3))

    with pytest.raises(ShapeMismatch):
        RationalMatrix.from_rows([[1, 2], [3]])

    matrix = RationalMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert matrix.shape == (2, 3)
    assert matrix[1, 2] == 6
    assert isinstance(matrix[0, 0], Fraction)
    assert matrix.transpose().shape == (3, 2)
    assert matrix.column(1) == (2, 5)

    with pytest.raises(ShapeMismatch):
        matrix @ matrix


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ([[1, 1], [0, 1]], [[1, -1], [0, 1]]),
        ([[2, 0], [0, 4]], [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]),
    ],
)
def test_invert_examples(rows, expected):
    assert invert(RationalMatrix.from_rows(rows)) == RationalMatrix.from_rows(expected)


def test_invert_errors():
    with pytest.raises(SingularMatrix):
        invert(RationalMatrix.from_rows([[1, 2], [2, 4]]))

    with pytest.raises(ShapeMismatch):
        invert(RationalMatrix.from_rows([[1, 2, 3]]))


@settings(max_examples=50, deadline=None)
@given(square_matrices(5))
def test_invert_multiplies_back(matrix):
    if det(matrix) == 0:
        with pytest.raises(SingularMatrix):
            invert(matrix)
        return

    inverse = invert(matrix)
    assert matrix @ inverse == RationalMatrix.identity(5)
    assert inverse @ matrix == RationalMatrix.identity(5)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(square_matrices))
def test_det_agrees_with_sympy_and_cofactors(matrix):
    expected = to_sympy(matrix).det()
    assert det(matrix) == Fraction(int(expected.p), int(expected.q))
    assert det(matrix) == cofactor_det(matrix)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=1, max_value=6),
    st.data(),
)
def test_rank_and_rref_agree_with_sympy(rows, cols, data):
    values = data.draw(st.lists(small, min_size=rows * cols, max_size=rows * cols))
    matrix = RationalMatrix(rows, cols, tuple(values))

    reduced, pivots = rref(matrix)
    expected, expected_pivots = to_sympy(matrix).rref()

    assert rank(matrix) == to_sympy(matrix).rank()
    assert pivots == tuple(expected_pivots)
    assert to_sympy(reduced) == expected


@pytest.mark.parametrize(
    "points, expected",
    [
        ([Fraction(7, 3)], 1),
        ([1, 2, 3], 2),
        ([5, 5], 0),
        ([0, 1, -1, 2], 12),
    ],
)
def test_vandermonde_det(points, expected):
    assert vandermonde_det(points) == expected
    assert det(vandermonde_matrix(points)) == expected


def test_left_kernel_basis():
    assert left_kernel_basis(RationalMatrix.identity(3)).shape == (0, 3)

    kernel = left_kernel_basis(RationalMatrix.from_rows([[1], [1]]))
    assert kernel.shape == (1, 2)
    assert kernel.row(0)[0] == -kernel.row(0)[1] != 0

    standard = RationalMatrix.from_columns(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1], [1, 2, 3, 4]]
    ).transpose()
    B = left_kernel_basis(standard)
    assert B.shape == (2, 6)
    assert (B @ standard).is_zero()
    assert rank(B) == 2


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=4),
    st.data(),
)
def test_left_kernel_rank_nullity(rows, cols, data):
    values = data.draw(st.lists(small, min_size=rows * cols, max_size=rows * cols))
    matrix = RationalMatrix(rows, cols, tuple(values))
    kernel = left_kernel_basis(matrix)

    assert (kernel @ matrix).is_zero()
    assert kernel.rows == rows - rank(matrix)
    assert rank(kernel) == kernel.rows


def test_all_minors_nonzero():
    assert all_minors_nonzero(RationalMatrix.identity(2), 2)
    assert not all_minors_nonzero(RationalMatrix.from_rows([[1, 0, 2], [3, 0, 4]]), 1)
    assert not all_minors_nonzero(RationalMatrix.identity(3), 2)

    with pytest.raises(ShapeMismatch):
        all_minors_nonzero(RationalMatrix.identity(2), 3)


def test_solve_by_cramer():
    matrix = RationalMatrix.from_rows([[2, 1], [1, 3]])
    solution = solve(matrix, [3, 5])

    assert solution == (Fraction(4, 5), Fraction(7, 5))
    assert matrix @ RationalMatrix.from_columns([solution]) == RationalMatrix.from_columns([[3, 5]])

    with pytest.raises(SingularMatrix):
        solve(RationalMatrix.from_rows([[1, 1], [1, 1]]), [1, 2])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=5))
def test_vandermonde_product_formula(points):
    assert vandermonde_det(points) == det(vandermonde_matrix(points)) == cofactor_det(vandermonde_matrix(points))
