"""Exact convex polytopes.

A Polytope keeps its vertex list (V-representation) together with the facet
halfspaces and vertex incidences computed when it was hulled. Facets and the
H-to-V conversion come from cdd's double description method in fraction
mode. Polytopes that are not full-dimensional carry an explicit affine hull;
their facets live in the intrinsic coordinates of that hull, which are the
pivot coordinates of its reduced row echelon basis.

Face lattice, edges and triangulation are computed on first use and cached.
"""

import logging
import os
import threading
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Any, Literal

import cdd

from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    NotAFaceError,
    ParameterRangeError,
    UnboundedError,
)
from .halfspace import HalfSpace
from .lp import NUMBER_TYPE, feasible_point, inequality_rows
from .rational import (
    ONE,
    ZERO,
    Point,
    add,
    as_point,
    centroid,
    check_dims,
    det,
    dot,
    format_point,
    nullspace,
    rank,
    rref,
    scale,
    sub,
)

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))


class Empty(Enum):
    """Marker returned by h_to_v for infeasible systems."""

    EMPTY = "empty"


EMPTY = Empty.EMPTY


@dataclass(frozen=True)
class AffineHull:
    """Affine subspace base + span(basis).

    The basis is in reduced row echelon form with pivot columns ``pivots``,
    so the pivot coordinates of a point are affine coordinates on the hull.
    """

    base: Point
    basis: tuple[Point, ...]
    pivots: tuple[int, ...]

    @classmethod
    def of(cls, points: Sequence[Point]) -> "AffineHull":
        """Affine hull of a nonempty point list."""
        base = points[0]
        reduced, pivots = rref([sub(p, base) for p in points[1:]])
        return cls(base, tuple(tuple(r) for r in reduced), tuple(pivots))

    @property
    def ambient_dim(self) -> int:
        """Dimension of the ambient space."""
        return len(self.base)

    @property
    def dim(self) -> int:
        """Dimension of the hull."""
        return len(self.basis)

    def to_intrinsic(self, x: Point) -> Point:
        """Coordinates of x in the hull's pivot frame."""
        return tuple(x[p] for p in self.pivots)

    def from_intrinsic(self, y: Point) -> Point:
        """Point of the hull with the given pivot coordinates."""
        out = list(self.base)
        for yj, p, row in zip(y, self.pivots, self.basis, strict=True):
            c = yj - self.base[p]
            if c:
                for i in range(len(out)):
                    out[i] += c * row[i]
        return tuple(out)

    def normals(self) -> list[Point]:
        """Basis of the orthogonal complement of the direction space."""
        return nullspace(self.basis, self.ambient_dim)

    def equations(self) -> list[HalfSpace]:
        """Halfspace pairs whose intersection is the hull."""
        out = []
        for w in self.normals():
            h = HalfSpace(w, dot(w, self.base))
            out.extend([h, h.flipped()])
        return out

    def contains(self, x: Point) -> bool:
        """Whether x lies on the hull."""
        return self.from_intrinsic(self.to_intrinsic(x)) == x

    def pull_back(self, h: HalfSpace) -> HalfSpace:
        """Ambient halfspace cutting the hull where the intrinsic one does."""
        normal = [ZERO] * self.ambient_dim
        for a, p in zip(h.normal, self.pivots, strict=True):
            normal[p] = a
        return HalfSpace(tuple(normal), h.offset)


@dataclass(frozen=True, order=True)
class Face:
    """A face of a polytope as (dimension, sorted vertex-index set)."""

    dim: int
    vertices: tuple[int, ...]


def _affine_rank(points: Sequence[Point]) -> int:
    """Number of affinely independent points among ``points``."""
    if not points:
        return 0
    return 1 + rank([sub(p, points[0]) for p in points[1:]]) if len(points) > 1 else 1


def _facet_halfspaces(pts: Sequence[Point]) -> list[HalfSpace]:
    """Facet halfspaces of the hull of points spanning their space, by double description.

    cdd returns rows [b, A] meaning b + Ax >= 0.
    """
    mat = cdd.Matrix([[ONE, *p] for p in pts], number_type=NUMBER_TYPE)
    mat.rep_type = cdd.RepType.GENERATOR
    inequalities = cdd.Polyhedron(mat).get_inequalities()
    if inequalities.lin_set:
        raise ValueError("points do not span their space")
    facets = set()
    for i in range(inequalities.row_size):
        row = [Fraction(x) for x in inequalities[i]]
        normal = tuple(-a for a in row[1:])
        if any(normal):
            facets.add(HalfSpace(normal, row[0]))
    return sorted(facets)


class Polytope:
    """A bounded convex polytope with exact rational data.

    Build instances with ``convex_hull`` or ``h_to_v``; the constructor
    trusts its arguments.
    """

    def __init__(
        self,
        vertices: Sequence[Point],
        affine: AffineHull,
        facets: Sequence[HalfSpace],
        incidence: Sequence[frozenset[int]],
    ) -> None:
        self.vertices: tuple[Point, ...] = tuple(vertices)
        self.affine = affine
        # Intrinsic facet halfspaces and their vertex-index sets
        self.intrinsic_facets: tuple[HalfSpace, ...] = tuple(facets)
        self.incidence: tuple[frozenset[int], ...] = tuple(incidence)
        self._lock = threading.RLock()
        self._cache: dict[str, Any] = {}

    def __getstate__(self) -> dict[str, Any]:
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state: dict[str, Any]) -> None:
        self.__dict__.update(state)
        self._lock = threading.RLock()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, affine_dim={self.affine_dim}, vertices={len(self.vertices)})"

    def _cached(self, key: str, compute: Any) -> Any:
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    @property
    def dim(self) -> int:
        """Ambient dimension n."""
        return len(self.vertices[0])

    @property
    def affine_dim(self) -> int:
        """Dimension of the affine hull."""
        return self.affine.dim

    @property
    def is_full_dimensional(self) -> bool:
        """Whether the affine hull is the whole space."""
        return self.affine_dim == self.dim

    @property
    def facets(self) -> tuple[HalfSpace, ...]:
        """Facet halfspaces in ambient coordinates (affine-hull equations excluded)."""
        return self._cached("facets", lambda: tuple(self.affine.pull_back(h) for h in self.intrinsic_facets))

    def intrinsic_vertices(self) -> list[Point]:
        """Vertices in the coordinates of the affine hull."""
        return [self.affine.to_intrinsic(v) for v in self.vertices]

    def index_of(self, v: Point) -> int | None:
        """Position of v in the sorted vertex list, or None."""
        table: dict[Point, int] = self._cached("index", lambda: {p: i for i, p in enumerate(self.vertices)})
        return table.get(v)

    def contains(self, x: Point, strict: bool = False) -> bool:
        """Membership test; ``strict`` asks for the relative interior."""
        if len(x) != self.dim:
            raise DimensionMismatchError(f"point of dimension {len(x)} tested against a polytope in R^{self.dim}")
        if not self.affine.contains(x):
            return False
        if self.affine_dim == 0:
            return True
        y = self.affine.to_intrinsic(x)
        return all(h.contains(y, strict) for h in self.intrinsic_facets)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Vertex-index pairs spanning the edges of the polytope."""

        def compute() -> tuple[tuple[int, int], ...]:
            k = self.affine_dim
            if k == 0:
                return ()
            if k == 1:
                return ((0, 1),)
            out = []
            for i, j in combinations(range(len(self.vertices)), 2):
                pairs = zip(self.intrinsic_facets, self.incidence, strict=True)
                normals = [h.normal for h, inc in pairs if i in inc and j in inc]
                if len(normals) >= k - 1 and rank(normals) == k - 1:
                    out.append((i, j))
            return tuple(out)

        return self._cached("edges", compute)

    def faces(self) -> tuple[Face, ...]:
        """The face lattice (nonempty faces, P included), closed under intersection."""

        def compute() -> tuple[Face, ...]:
            everything = frozenset(range(len(self.vertices)))
            found: set[frozenset[int]] = {everything, *self.incidence}
            frontier = set(self.incidence)
            while frontier:
                fresh = set()
                for a in frontier:
                    for b in self.incidence:
                        c = a & b
                        if c and c not in found:
                            fresh.add(c)
                found |= fresh
                frontier = fresh
            out = []
            for s in found:
                idx = tuple(sorted(s))
                out.append(Face(_affine_rank([self.vertices[i] for i in idx]) - 1, idx))
            return tuple(sorted(out))

        return self._cached("faces", compute)

    def faces_of_dim(self, k: int) -> list[Face]:
        """All faces of dimension k."""
        return [f for f in self.faces() if f.dim == k]

    def face_polytope(self, face: Face) -> "Polytope":
        """The face as a polytope of its own."""
        return convex_hull([self.vertices[i] for i in face.vertices])

    def locate_face(self, face: "Face | Polytope") -> Face:
        """Identify a face given as a Face or as a Polytope.

        Raises:
            NotAFaceError: If it is not a face of this polytope
        """
        if isinstance(face, Polytope):
            indices = [self.index_of(v) for v in face.vertices]
            if any(i is None for i in indices):
                raise NotAFaceError("vertex set is not a subset of V(P)")
            key = tuple(sorted(i for i in indices if i is not None))
        else:
            key = face.vertices
        for f in self.faces():
            if f.vertices == key:
                return f
        raise NotAFaceError(f"vertex set {list(key)} is not a face")

    def facets_containing(self, face: Face) -> list[int]:
        """Indices of the facets that contain the face."""
        members = set(face.vertices)
        return [i for i, inc in enumerate(self.incidence) if members <= inc]

    def triangulate(self) -> tuple[tuple[int, ...], ...]:
        """Pulling triangulation: simplices as vertex-index tuples."""

        def compute() -> tuple[tuple[int, ...], ...]:
            lattice = self.faces()
            by_dim: dict[int, list[frozenset[int]]] = {}
            for f in lattice:
                by_dim.setdefault(f.dim, []).append(frozenset(f.vertices))
            memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

            def pull(face: frozenset[int], d: int) -> list[tuple[int, ...]]:
                if face in memo:
                    return memo[face]
                if d == 0:
                    result = [tuple(face)]
                else:
                    apex = min(face)
                    result = []
                    for sub_face in by_dim.get(d - 1, []):
                        if sub_face < face and apex not in sub_face:
                            result.extend((apex, *s) for s in pull(sub_face, d - 1))
                memo[face] = result
                return result

            return tuple(pull(frozenset(range(len(self.vertices))), self.affine_dim))

        return self._cached("triangulation", compute)

    @property
    def volume(self) -> Fraction:
        """Volume in intrinsic coordinates (the Euclidean volume when full-dimensional)."""

        def compute() -> Fraction:
            if self.affine_dim == 0:
                return ONE
            pts = self.intrinsic_vertices()
            return sum((simplex_volume([pts[i] for i in s]) for s in self.triangulate()), ZERO)

        return self._cached("volume", compute)

    def homothety(self, factor: Fraction, shift: Point) -> "Polytope":
        """The image under x -> factor * x + shift (factor > 0) without re-hulling."""
        if factor <= 0:
            raise ValueError("homothety factor must be positive")
        shift_int = self.affine.to_intrinsic(shift)
        affine = AffineHull(add(scale(factor, self.affine.base), shift), self.affine.basis, self.affine.pivots)
        facets = [HalfSpace(h.normal, factor * h.offset + dot(h.normal, shift_int)) for h in self.intrinsic_facets]
        vertices = [add(scale(factor, v), shift) for v in self.vertices]
        return Polytope(vertices, affine, facets, self.incidence)

    def translate(self, shift: Point) -> "Polytope":
        """P + shift."""
        return self.homothety(ONE, shift)


def simplex_volume(points: Sequence[Point]) -> Fraction:
    """Volume of a full-dimensional simplex given by k+1 points in R^k."""
    k = len(points) - 1
    return abs(det([sub(p, points[0]) for p in points[1:]])) / factorial(k)


def convex_hull(points: Iterable[Sequence[int | str | Fraction]]) -> Polytope:
    """Hull of a finite point set.

    Args:
        points: Nonempty list of points of one dimension

    Returns:
        The polytope whose vertices are the extreme points of the input

    Raises:
        EmptyInputError: If no points are given
        DimensionMismatchError: If the points differ in length
    """
    unique = sorted({as_point(p) for p in points})
    if not unique:
        raise EmptyInputError("convex_hull needs at least one point")
    check_dims(*unique)
    affine = AffineHull.of(unique)
    k = affine.dim
    intrinsic = [affine.to_intrinsic(p) for p in unique]

    if k == 0:
        return Polytope(unique, affine, (), ())
    if k == 1:
        lo = min(range(len(unique)), key=lambda i: intrinsic[i])
        hi = max(range(len(unique)), key=lambda i: intrinsic[i])
        vertices = sorted([unique[lo], unique[hi]])
        ends = [affine.to_intrinsic(v)[0] for v in vertices]
        facets = []
        for idx, end in enumerate(ends):
            other = ends[1 - idx]
            h = HalfSpace((ONE,), end) if end > other else HalfSpace((-ONE,), -end)
            facets.append((h, frozenset({idx})))
        facets.sort()
        return Polytope(vertices, affine, [h for h, _ in facets], [inc for _, inc in facets])

    facets = _facet_halfspaces(intrinsic)
    touching = [[i for i, p in enumerate(intrinsic) if h.value(p) == 0] for h in facets]
    members: dict[int, list[HalfSpace]] = {}
    for h, incident in zip(facets, touching, strict=True):
        for i in incident:
            members.setdefault(i, []).append(h)
    # A point is a vertex iff its facet normals span the space
    extreme = sorted(i for i, hs in members.items() if rank([h.normal for h in hs]) == k)
    renumber = {old: new for new, old in enumerate(extreme)}
    incidence = [frozenset(renumber[i] for i in inc if i in renumber) for inc in touching]
    return Polytope([unique[i] for i in extreme], affine, facets, incidence)


def h_to_v(halfspaces: Sequence[HalfSpace]) -> Polytope | Literal[Empty.EMPTY]:
    """Convert an H-representation to a Polytope.

    The generators come from cdd's double description in fraction mode;
    vertex rows are [1, x] and ray or line rows mean the set is unbounded.

    Raises:
        UnboundedError: If the system describes an unbounded set
        EmptyInputError: If no halfspaces are given
    """
    if not halfspaces:
        raise EmptyInputError("h_to_v needs at least one halfspace")
    n = halfspaces[0].dim
    if feasible_point(halfspaces, n) is None:
        return EMPTY
    mat = cdd.Matrix(inequality_rows(halfspaces, n), number_type=NUMBER_TYPE)
    mat.rep_type = cdd.RepType.INEQUALITY
    generators = cdd.Polyhedron(mat).get_generators()
    points: list[Point] = []
    for i in range(generators.row_size):
        row = [Fraction(x) for x in generators[i]]
        if row[0] == 0 or i in generators.lin_set:
            raise UnboundedError(f"halfspace system is unbounded along {format_point(tuple(row[1:]))}")
        points.append(tuple(x / row[0] for x in row[1:]))
    logger.debug(f"Double description gave {len(points)} generators from {len(halfspaces)} halfspaces")
    return convex_hull(points)


def v_to_h(P: Polytope) -> list[HalfSpace]:
    """Irredundant ambient H-representation, canonically ordered.

    Lower-dimensional polytopes also get the halfspace pairs of their
    affine hull equations.
    """
    return sorted(set(P.facets) | set(P.affine.equations()))


def support(P: Polytope, u: Point) -> tuple[Fraction, Polytope]:
    """Support value h_P(u) and the face F_u(P).

    Raises:
        ValueError: If u is the zero vector
    """
    if len(u) != P.dim:
        raise DimensionMismatchError(f"direction of dimension {len(u)} for a polytope in R^{P.dim}")
    if all(x == 0 for x in u):
        raise ValueError("support direction must be nonzero")
    values = [dot(u, v) for v in P.vertices]
    best = max(values)
    return best, convex_hull([v for v, val in zip(P.vertices, values, strict=True) if val == best])


def k_skeleton(P: Polytope, k: int) -> list[Polytope]:
    """All k-dimensional faces of P as polytopes.

    Raises:
        ParameterRangeError: If k is outside 0..affine_dim(P)
    """
    if not 0 <= k <= P.affine_dim:
        raise ParameterRangeError(f"k must lie in [0, {P.affine_dim}], got {k}")
    return [P.face_polytope(f) for f in P.faces_of_dim(k)]


def is_centrally_symmetric(P: Polytope) -> Point | None:
    """The center of symmetry of P, or None."""
    c = centroid(list(P.vertices))
    doubled = scale(Fraction(2), c)
    mirrored = {sub(doubled, v) for v in P.vertices}
    return c if mirrored == set(P.vertices) else None


def clip(P: Polytope, h: HalfSpace) -> Polytope | None:
    """P intersected with the closed halfspace h, or None when empty."""
    values = [h.value(v) for v in P.vertices]
    if all(v <= 0 for v in values):
        return P
    kept = [v for v, val in zip(P.vertices, values, strict=True) if val <= 0]
    if not kept:
        return None
    for i, j in P.edges():
        a, b = values[i], values[j]
        if (a < 0 < b) or (b < 0 < a):
            t = a / (a - b)
            kept.append(add(P.vertices[i], scale(t, sub(P.vertices[j], P.vertices[i]))))
    return convex_hull(kept)


def intersection(P: Polytope, halfspaces: Iterable[HalfSpace]) -> Polytope | None:
    """P clipped by every halfspace in turn.

    Args:
        P: The polytope
        halfspaces: Halfspaces over the same space

    Returns:
        The intersection, or None when it is empty
    """
    current: Polytope | None = P
    for h in halfspaces:
        if current is None:
            return None
        current = clip(current, h)
    return current


def section(P: Polytope, affine: AffineHull) -> Polytope | None:
    """P intersected with an affine subspace."""
    return intersection(P, affine.equations())


def interior_point(P: Polytope) -> Point:
    """A point in the relative interior of P (the vertex centroid)."""
    return centroid(list(P.vertices))
