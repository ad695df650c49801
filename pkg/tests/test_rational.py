"""Unit tests for exact rational vectors and linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.vergen.errors import DimensionMismatchError, EmptyInputError
from src.vergen.rational import (
    as_point,
    centroid,
    check_dims,
    det,
    floor_sqrt,
    format_point,
    format_scalar,
    lincomb,
    matmul,
    nullspace,
    rank,
    rref,
    solve,
)


rationals = st.fractions(min_value=0, max_value=1000, max_denominator=50)


def test_format_scalar_is_canonical():
    """Test that formatting always gives reduced "p" or "p/q" text."""
    assert format_scalar(Fraction(2, 4)) == "1/2"
    assert format_scalar(Fraction(-6, 3)) == "-2"
    assert format_point((Fraction(1, 3), Fraction(0))) == ["1/3", "0"]


def test_as_point_accepts_strings_and_ints():
    assert as_point(["1/2", 3, Fraction(1, 4)]) == (Fraction(1, 2), Fraction(3), Fraction(1, 4))


def test_check_dims():
    """Test the shared-dimension check."""
    # Act & Assert
    assert check_dims((1, 2), (3, 4)) == 2
    with pytest.raises(DimensionMismatchError):
        check_dims((1, 2), (3,))
    with pytest.raises(EmptyInputError):
        check_dims()


def test_centroid():
    assert centroid([(0, 0), (1, 0), (0, 1)]) == (Fraction(1, 3), Fraction(1, 3))


def test_rref_and_rank():
    """Test reduction of a rank-2 matrix."""
    # Act
    reduced, pivots = rref([[1, 2, 3], [2, 4, 6], [0, 1, 1]])

    # Assert
    assert pivots == [0, 1]
    assert reduced == [[1, 0, 1], [0, 1, 1]]
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 2


def test_nullspace_is_orthogonal_to_rows():
    # Arrange
    rows = [[1, 1, 0]]

    # Act
    basis = nullspace(rows, 3)

    # Assert
    assert len(basis) == 2
    for v in basis:
        assert sum(a * b for a, b in zip(rows[0], v)) == 0


def test_solve_and_singular_system():
    """Test exact solving and the singular case."""
    assert solve([[2, 1], [1, 3]], [3, 5]) == (Fraction(4, 5), Fraction(7, 5))
    assert solve([[1, 2], [2, 4]], [1, 2]) is None


def test_det_and_matmul():
    # Arrange
    rotation = ((0, -1), (1, 0))

    # Act & Assert
    assert det(rotation) == 1
    assert det(((1, 2), (2, 4))) == 0
    assert det(((0, 1), (1, 0))) == -1
    assert matmul(rotation, rotation) == ((-1, 0), (0, -1))


def test_lincomb():
    assert lincomb([Fraction(1, 2), 2], [(1, 0), (0, 1)], 2) == (Fraction(1, 2), Fraction(2))


def test_floor_sqrt_examples():
    """Test rounding down to a fixed denominator."""
    assert floor_sqrt(Fraction(2), 10) == Fraction(7, 5)
    assert floor_sqrt(Fraction(1, 16), 16) == Fraction(1, 4)
    assert floor_sqrt(Fraction(0), 3) == 0


@given(value=rationals, denominator=st.integers(min_value=1, max_value=64))
def test_floor_sqrt_brackets_the_root(value, denominator):
    """Test that floor_sqrt is the largest multiple of 1/denominator below the root."""
    # Act
    root = floor_sqrt(value, denominator)

    # Assert
    assert root.denominator <= denominator
    assert root * root <= value
    assert (root + Fraction(1, denominator)) ** 2 > value
