"""Unit tests for Minkowski sums, zonotopes and linear maps."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.vergen.errors import (
    BudgetExceededError,
    DimensionMismatchError,
    ParameterRangeError,
    PreconditionError,
    SingularMapError,
)
from src.vergen.generators import cube, random_hull
from src.vergen.minkowski import (
    LinearMap,
    Segment,
    Zonotope,
    add_segment,
    face_after_segment_sum,
    homothety,
    is_translate,
    linear_image,
    minkowski_sum,
    reflect,
    rotation_2d,
    rotation_from_quaternion,
    vertex_series,
)
from src.vergen.polytope import Face, convex_hull, support
from src.vergen.rational import identity


HALF = Fraction(1, 2)


# Test sums
def test_minkowski_sum_of_squares(square):
    assert minkowski_sum(square, square) == cube(2, -2, 2)


def test_minkowski_sum_with_a_point_is_a_translate(triangle):
    # Act
    moved = minkowski_sum(triangle, convex_hull([(1, 2)]))

    # Assert
    assert is_translate(triangle, moved) == (1, 2)


def test_minkowski_sum_dimension_mismatch(square):
    with pytest.raises(DimensionMismatchError):
        minkowski_sum(square, cube(3))


def test_add_segment(square):
    """Test that a diagonal segment turns the square into a hexagon."""
    # Act
    P = add_segment(square, Segment((0, 0), (1, 1)))

    # Assert
    assert len(P.vertices) == 6
    assert set(P.vertices) == {(-1, -1), (-1, 1), (1, -1), (2, 2), (0, 2), (2, 0)}


def test_degenerate_segment_acts_as_a_point(square):
    assert add_segment(square, Segment((1, 1), (1, 1))) == square.translate((1, 1))


# Test zonotopes
def test_zonotope_to_polytope(square):
    # Arrange
    Z = Zonotope((0, 0), ((1, 0), (0, 1)))
    Z3 = Z + Zonotope((1, 0), ((1, 1),))

    # Act & Assert
    assert Z.to_polytope() == square
    assert Z3.center == (1, 0)
    assert len(Z3.to_polytope().vertices) == 6
    assert Z.scaled(HALF).to_polytope() == cube(2, -HALF, HALF)


def test_zonotope_without_generators_is_its_center():
    assert Zonotope((1, 2)).to_polytope().vertices == ((1, 2),)


def test_zonotope_validation():
    with pytest.raises(ValueError):
        Zonotope((0, 0), ((0, 0),))
    with pytest.raises(DimensionMismatchError):
        Zonotope((0, 0), ((1, 0, 0),))


# Test linear maps
def test_linear_map_order():
    """Test orders of finite-order maps and of an irrational rotation."""
    assert LinearMap.identity(2).order(24) == 1
    assert LinearMap.negation(3).order(24) == 2
    assert rotation_2d(1, 1).order(24) == 4
    assert rotation_2d(2, 1).order(24) is None


def test_rotation_2d_is_rational_rotation():
    # Act
    A = rotation_2d(2, 1)

    # Assert
    assert A((1, 0)) == (Fraction(3, 5), Fraction(4, 5))
    assert A.determinant == 1


def test_rotation_from_quaternion():
    # Act
    quarter = rotation_from_quaternion(1, 1, 0, 0)

    # Assert
    assert rotation_from_quaternion(1, 0, 0, 0).entries == identity(3)
    assert quarter((0, 1, 0)) == (0, 0, 1)
    assert quarter.determinant == 1
    assert quarter.order(24) == 4
    with pytest.raises(SingularMapError):
        rotation_from_quaternion(0, 0, 0, 0)


def test_linear_map_must_be_square():
    with pytest.raises(DimensionMismatchError):
        LinearMap(((1, 0, 0), (0, 1, 0)))


def test_linear_image_and_reflect(triangle):
    # Act
    reflected = reflect(triangle)
    stretched = linear_image(triangle, LinearMap(((2, 0), (0, 1))))

    # Assert
    assert reflected == convex_hull([(0, 0), (-1, 0), (0, -1)])
    assert stretched == convex_hull([(0, 0), (2, 0), (0, 1)])
    assert (LinearMap.negation(2) @ LinearMap.negation(2)).entries == identity(2)


def test_linear_image_singular(square):
    with pytest.raises(SingularMapError):
        linear_image(square, LinearMap(((1, 0), (0, 0))))


def test_homothety_and_is_translate(square):
    assert homothety(square, HALF, (1, 1)) == cube(2, HALF, Fraction(3, 2))
    assert is_translate(square, square.translate((1, 2))) == (1, 2)
    assert is_translate(square, cube(2, -2, 2)) is None


# Test the vertex series
def test_vertex_series_levels(triangle):
    """Test the empty sum, level 0 and level 1 of the triangle series."""
    # Act
    empty = vertex_series(triangle, HALF, -1, 100)
    level0 = vertex_series(triangle, HALF, 0, 100)
    level1 = vertex_series(triangle, HALF, 1, 100)

    # Assert
    assert empty == [(0, 0)]
    assert level0 == [(0, 0), (0, HALF), (HALF, 0)]
    assert len(level1) == 9
    assert (Fraction(3, 4), 0) in level1


def test_vertex_series_budget(triangle):
    with pytest.raises(BudgetExceededError) as excinfo:
        vertex_series(triangle, HALF, 0, 2)
    assert excinfo.value.budget_name == "point"
    assert excinfo.value.limit == 2


# Test faces of segment sums
def test_face_after_segment_sum(square):
    """Test that the corner (1, 1) moves to (2, 2) and stays exposed."""
    # Act
    shifted, u = face_after_segment_sum(square, Face(0, (3,)), (1, 1), Fraction(1))

    # Assert
    assert shifted.vertices == ((2, 2),)
    assert u == (1, 1)


def test_face_after_segment_sum_preconditions(square):
    with pytest.raises(PreconditionError):
        face_after_segment_sum(square, Face(0, (3,)), (-1, -1), Fraction(1))
    with pytest.raises(ParameterRangeError):
        face_after_segment_sum(square, Face(0, (3,)), (1, 1), Fraction(0))


directions = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(lambda u: u != (0, 0))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000), u=directions)
def test_faces_of_a_sum_are_sums_of_faces(seed, u):
    """Test h_{P+Q} = h_P + h_Q and F_u(P+Q) = F_u(P) + F_u(Q)."""
    # Arrange
    P = random_hull(2, seed)
    Q = random_hull(2, seed + 1)

    # Act
    value, face = support(minkowski_sum(P, Q), u)
    p_value, p_face = support(P, u)
    q_value, q_face = support(Q, u)

    # Assert
    assert value == p_value + q_value
    assert face == minkowski_sum(p_face, q_face)
