"""Squared distances between points and polytopes.

All outputs are squared Euclidean distances so they stay rational.
"""

from fractions import Fraction

from .errors import DimensionMismatchError
from .polytope import AffineHull, Polytope
from .rational import Point, add, distance_sq, dot, lincomb, solve, sub


def _project(x: Point, base: Point, directions: list[Point]) -> Point:
    """Orthogonal projection of x onto base + span(directions)."""
    if not directions:
        return base
    gram = [[dot(a, b) for b in directions] for a in directions]
    rhs = [dot(a, sub(x, base)) for a in directions]
    coefficients = solve(gram, rhs)
    if coefficients is None:
        raise ValueError("projection directions must be linearly independent")
    return add(base, lincomb(coefficients, directions, len(x)))


def point_distance_sq(P: Polytope, x: Point) -> Fraction:
    """Squared distance from x to P.

    The nearest point of P lies in the relative interior of some face, where
    it is the projection of x onto that face's affine hull; every face is
    tried and projections falling outside P are discarded.
    """
    if len(x) != P.dim:
        raise DimensionMismatchError(f"point of dimension {len(x)} against a polytope in R^{P.dim}")
    if P.contains(x):
        return Fraction(0)
    candidates = []
    for face in P.faces():
        hull = AffineHull.of([P.vertices[i] for i in face.vertices])
        candidate = _project(x, hull.base, list(hull.basis))
        if face.dim == 0 or P.contains(candidate):
            candidates.append(distance_sq(x, candidate))
    return min(candidates)


def _check(P: Polytope, Q: Polytope) -> None:
    if P.dim != Q.dim:
        raise DimensionMismatchError(f"cannot compare polytopes in R^{P.dim} and R^{Q.dim}")


def hausdorff_sq(P: Polytope, Q: Polytope) -> Fraction:
    """Squared Hausdorff distance d_H(P, Q)^2.

    The distance from a point to a convex body is convex, so its maximum over
    a polytope is attained at a vertex.
    """
    _check(P, Q)
    one_way = max(point_distance_sq(Q, v) for v in P.vertices)
    other_way = max(point_distance_sq(P, w) for w in Q.vertices)
    return max(one_way, other_way)


def dF_sq(P: Polytope, Q: Polytope) -> Fraction:
    """Squared Hausdorff distance between the vertex sets V(P) and V(Q)."""
    _check(P, Q)
    one_way = max(min(distance_sq(v, w) for w in Q.vertices) for v in P.vertices)
    other_way = max(min(distance_sq(v, w) for v in P.vertices) for w in Q.vertices)
    return max(one_way, other_way)
