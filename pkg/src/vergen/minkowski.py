"""Minkowski sums, segments, zonotopes and linear images."""

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .cone import normal_cone
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    ParameterRangeError,
    PreconditionError,
    SingularMapError,
)
from .polytope import Face, Polytope, convex_hull, support
from .rational import (
    ONE,
    ZERO,
    Matrix,
    Point,
    add,
    as_point,
    det,
    dot,
    identity,
    is_zero,
    matmul,
    matvec,
    neg,
    scale,
    sub,
)

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))


@dataclass(frozen=True)
class Segment:
    """The segment [a, b]; a == b is allowed and acts as a point."""

    a: Point
    b: Point

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise DimensionMismatchError("segment endpoints differ in dimension")

    @classmethod
    def centered(cls, center: Point, half: Point) -> "Segment":
        """Segment [center - half, center + half]."""
        return cls(sub(center, half), add(center, half))

    def to_polytope(self) -> Polytope:
        """The segment as a one-dimensional polytope."""
        return convex_hull([self.a, self.b])


@dataclass(frozen=True)
class Zonotope:
    """center + sum of [-g, g] over the generators."""

    center: Point
    generators: tuple[Point, ...] = field(default=())

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != len(self.center):
                raise DimensionMismatchError("zonotope generator dimension differs from the center")
            if is_zero(g):
                raise ValueError("zonotope generators must be nonzero")

    @property
    def dim(self) -> int:
        """Ambient dimension."""
        return len(self.center)

    def __add__(self, other: "Zonotope") -> "Zonotope":
        return Zonotope(add(self.center, other.center), self.generators + other.generators)

    def scaled(self, factor: Fraction) -> "Zonotope":
        """The zonotope scaled about the origin."""
        return Zonotope(scale(factor, self.center), tuple(scale(factor, g) for g in self.generators))

    def to_polytope(self) -> Polytope:
        """Vertex representation of the zonotope."""
        return zonotope_to_polytope(self)


@dataclass(frozen=True)
class LinearMap:
    """An n x n rational matrix acting on column vectors."""

    entries: Matrix

    def __post_init__(self) -> None:
        rows = tuple(as_point(r) for r in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise DimensionMismatchError("linear map must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        """The identity map on R^n."""
        return cls(identity(n))

    @classmethod
    def negation(cls, n: int) -> "LinearMap":
        """The map x -> -x on R^n."""
        return cls(tuple(neg(r) for r in identity(n)))

    @property
    def dim(self) -> int:
        """Size of the square matrix."""
        return len(self.entries)

    def __call__(self, v: Point) -> Point:
        return matvec(self.entries, v)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(matmul(self.entries, other.entries))

    @property
    def determinant(self) -> Fraction:
        """Exact determinant."""
        return det(self.entries)

    def is_invertible(self) -> bool:
        """Whether the determinant is nonzero."""
        return self.determinant != 0

    def order(self, bound: int) -> int | None:
        """Smallest k <= bound with A^k = Id, or None."""
        eye = identity(self.dim)
        power = self.entries
        for k in range(1, bound + 1):
            if power == eye:
                return k
            power = matmul(power, self.entries)
        return None


def rotation_from_quaternion(a: int | Fraction, b: int | Fraction, c: int | Fraction, d: int | Fraction) -> LinearMap:
    """Rational 3-D rotation of the (not necessarily unit) quaternion a + bi + cj + dk."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    s = a * a + b * b + c * c + d * d
    if s == 0:
        raise SingularMapError("zero quaternion")
    rows = (
        (a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)),
        (2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)),
        (2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d),
    )
    return LinearMap(tuple(tuple(x / s for x in r) for r in rows))


def rotation_2d(p: int | Fraction, q: int | Fraction) -> LinearMap:
    """Rational plane rotation taking e1 to the direction of (p^2 - q^2, 2pq)."""
    p, q = Fraction(p), Fraction(q)
    s = p * p + q * q
    if s == 0:
        raise SingularMapError("zero rotation parameter")
    cos, sin = (p * p - q * q) / s, 2 * p * q / s
    return LinearMap(((cos, -sin), (sin, cos)))


def _check(P: Polytope, Q: Polytope) -> None:
    if P.dim != Q.dim:
        raise DimensionMismatchError(f"cannot add polytopes in R^{P.dim} and R^{Q.dim}")


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    """P + Q as the hull of all pairwise vertex sums."""
    _check(P, Q)
    if len(Q.vertices) == 1:
        return P.translate(Q.vertices[0])
    if len(P.vertices) == 1:
        return Q.translate(P.vertices[0])
    return convex_hull(add(v, w) for v in P.vertices for w in Q.vertices)


def add_segment(P: Polytope, segment: Segment) -> Polytope:
    """P + segment.

    Args:
        P: The polytope
        segment: Segment in the same space

    Returns:
        The Minkowski sum of P and the segment

    Raises:
        DimensionMismatchError: If the segment lives in another space
    """
    if len(segment.a) != P.dim:
        raise DimensionMismatchError(f"segment in R^{len(segment.a)} added to a polytope in R^{P.dim}")
    return minkowski_sum(P, segment.to_polytope())


def zonotope_to_polytope(Z: Zonotope) -> Polytope:
    """Center plus the sum of the generator segments."""
    current = convex_hull([Z.center])
    for g in Z.generators:
        current = add_segment(current, Segment(neg(g), g))
    return current


def vertex_series(P: Polytope, lam: Fraction, k: int, point_budget: int) -> list[Point]:
    """The set sum_{i=0}^{k} (1-lam)^i lam V(P), deduplicated and sorted.

    Raises:
        BudgetExceededError: If an intermediate level exceeds the point budget
    """
    a = ONE - lam
    points: set[Point] = {tuple(ZERO for _ in range(P.dim))}
    weight = lam
    for level in range(k + 1):
        if len(points) * len(P.vertices) > point_budget:
            raise BudgetExceededError("point", point_budget, f"series level {level}")
        steps = [scale(weight, v) for v in P.vertices]
        points = {add(s, t) for s in points for t in steps}
        weight *= a
    return sorted(points)


def linear_image(P: Polytope, A: LinearMap) -> Polytope:
    """Hull of {Av : v in V(P)}.

    Raises:
        SingularMapError: If A is not invertible
    """
    if A.dim != P.dim:
        raise DimensionMismatchError(f"{A.dim}x{A.dim} map applied to a polytope in R^{P.dim}")
    if not A.is_invertible():
        raise SingularMapError("linear map is singular")
    return convex_hull(A(v) for v in P.vertices)


def reflect(P: Polytope) -> Polytope:
    """Point reflection -P."""
    return linear_image(P, LinearMap.negation(P.dim))


def homothety(P: Polytope, factor: Fraction, shift: Point) -> Polytope:
    """factor * P + shift for factor > 0, keeping P's combinatorics."""
    return P.homothety(factor, shift)


def is_translate(P: Polytope, Q: Polytope) -> Point | None:
    """The vector t with Q = P + t, or None."""
    if P.dim != Q.dim or len(P.vertices) != len(Q.vertices):
        return None
    t = sub(Q.vertices[0], P.vertices[0])
    for v, w in zip(P.vertices, Q.vertices, strict=True):
        if sub(w, v) != t:
            return None
    return t


def face_after_segment_sum(P: Polytope, face: Face | Polytope, theta: Point, c: Fraction) -> tuple[Polytope, Point]:
    """The face F + c*theta of P + [-c*theta, c*theta] and a direction exposing it.

    The exposing direction u lies in the relative interior of N_P(F) and has
    <u, theta> > 0, which is exactly when P meets no translate F + eps*theta.

    Raises:
        ParameterRangeError: If c <= 0
        PreconditionError: If theta points into P from F
        NotAFaceError: If F is not a face of P
    """
    if c <= 0:
        raise ParameterRangeError(f"c must be positive, got {c}")
    located = P.locate_face(face)
    cone = normal_cone(P, located)
    values = [dot(g, theta) for g in cone.generators]
    best = max(range(len(values)), key=lambda i: values[i], default=None)
    if best is None or values[best] <= 0:
        raise PreconditionError("no normal of the face has positive product with theta")
    interior = [sum((g[j] for g in cone.generators), ZERO) for j in range(P.dim)]
    total = dot(interior, theta)
    weight = ZERO if total > 0 else (-total) / values[best] + ONE
    u = add(tuple(interior), scale(weight, cone.generators[best]))
    shifted = P.face_polytope(located).translate(scale(c, theta))
    summed = add_segment(P, Segment.centered(tuple(ZERO for _ in theta), scale(c, theta)))
    _, exposed = support(summed, u)
    if exposed != shifted:
        raise PreconditionError("translated face is not exposed in the sum")
    logger.debug(f"Face {list(located.vertices)} shifted by {c}*theta is exposed by {u}")
    return shifted, u
