"""Unit tests for squared Hausdorff distances."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.vergen.errors import DimensionMismatchError
from src.vergen.generators import cube, random_hull
from src.vergen.metrics import dF_sq, hausdorff_sq, point_distance_sq
from src.vergen.polytope import convex_hull


def test_point_distance_sq(square, triangle):
    """Test distances to a vertex, an edge and an inside point."""
    assert point_distance_sq(square, (3, 0)) == 4
    assert point_distance_sq(square, (2, 2)) == 2
    assert point_distance_sq(square, (0, 0)) == 0
    assert point_distance_sq(triangle, (1, 1)) == Fraction(1, 2)


def test_point_distance_to_segment_in_space():
    # Arrange
    segment = convex_hull([(0, 0, 0), (2, 0, 0)])

    # Act & Assert
    assert point_distance_sq(segment, (1, 1, 1)) == 2
    assert point_distance_sq(segment, (-1, 0, 0)) == 1


def test_hausdorff_sq_nested_squares(unit_square):
    # Arrange
    bigger = cube(2, 0, 2)

    # Act & Assert
    assert hausdorff_sq(unit_square, bigger) == 2
    assert hausdorff_sq(bigger, unit_square) == 2
    assert hausdorff_sq(unit_square, unit_square) == 0


def test_dF_sq_can_exceed_hausdorff(square):
    """Test that adding a vertex near the boundary moves V(P) but barely moves P."""
    # Arrange
    pentagon = convex_hull([*square.vertices, (Fraction(11, 10), 0)])

    # Act
    d_hausdorff = hausdorff_sq(square, pentagon)
    d_vertices = dF_sq(square, pentagon)

    # Assert
    assert d_hausdorff == Fraction(1, 100)
    assert d_vertices == Fraction(101, 100)


def test_dimension_mismatch(square):
    with pytest.raises(DimensionMismatchError):
        hausdorff_sq(square, cube(3))
    with pytest.raises(DimensionMismatchError):
        dF_sq(square, cube(3))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_face_distance_dominates_hausdorff(seed):
    # Arrange
    P = random_hull(2, seed)
    Q = random_hull(2, seed + 7)

    # Act & Assert
    assert dF_sq(P, Q) >= hausdorff_sq(P, Q)
