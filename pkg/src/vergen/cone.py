"""Polyhedral cones and normal cones of polytope faces."""

import logging
import os
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatchError
from .halfspace import HalfSpace
from .lp import LPMode, feasible_point, lp
from .polytope import Face, Polytope
from .rational import ONE, ZERO, Point, centroid, dot, is_zero, lincomb, rank, sub, zeros

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))


@dataclass(frozen=True)
class Cone:
    """apex + cone(generators).

    ``halfspaces``, when given, describe the same cone as
    {y : <a, y - apex> <= 0 for every a}.
    """

    apex: Point
    generators: tuple[Point, ...]
    halfspaces: tuple[HalfSpace, ...] = field(default=())

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != len(self.apex):
                raise DimensionMismatchError("cone generator dimension differs from the apex")
            if is_zero(g):
                raise ValueError("cone generators must be nonzero")

    @property
    def dim(self) -> int:
        """Dimension of the linear span of the generators."""
        return rank(self.generators) if self.generators else 0


def _equalities(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[HalfSpace] | None:
    """Halfspace pairs for row . z = rhs; None if some row is zero with rhs != 0."""
    out: list[HalfSpace] = []
    for row, b in zip(rows, rhs, strict=True):
        if all(x == 0 for x in row):
            if b != 0:
                return None
            continue
        h = HalfSpace(tuple(row), b)
        out.extend([h, h.flipped()])
    return out


def _nonnegative(count: int, offset: int, total: int) -> list[HalfSpace]:
    return [HalfSpace(tuple(-ONE if j == offset + i else ZERO for j in range(total)), ZERO) for i in range(count)]


def normal_cone(P: Polytope, face: Face | Polytope) -> Cone:
    """N_P(F): outer normals of the facets of P containing F.

    Lower-dimensional polytopes add both directions of every normal of
    their affine hull.

    Raises:
        NotAFaceError: If F is not a face of P
    """
    located = P.locate_face(face)
    members = set(located.vertices)
    gens = [P.facets[i].normal for i, inc in enumerate(P.incidence) if members <= inc]
    for w in P.affine.normals():
        gens.extend([w, tuple(-x for x in w)])
    anchor = centroid([P.vertices[i] for i in located.vertices])
    halfspaces = []
    for v in P.vertices:
        d = sub(v, anchor)
        if not is_zero(d):
            halfspaces.append(HalfSpace(d, ZERO))
    return Cone(zeros(P.dim), tuple(sorted(set(gens))), tuple(sorted(set(halfspaces))))


def cone_contains(C: Cone, y: Point) -> bool:
    """Whether y lies in C."""
    if C.halfspaces:
        d = sub(y, C.apex)
        return all(h.contains(d) for h in C.halfspaces)
    d = sub(y, C.apex)
    m = len(C.generators)
    if m == 0:
        return is_zero(d)
    eq = _equalities([[g[j] for g in C.generators] for j in range(len(d))], d)
    if eq is None:
        return False
    return feasible_point(eq + _nonnegative(m, 0, m), m) is not None


def cones_meet(C1: Cone, C2: Cone) -> Point | None:
    """A nonzero direction shared by two pointed cones, or None.

    Solves sum mu_i g_i = sum nu_j h_j with mu, nu >= 0 and sum mu = 1.
    """
    n = len(C1.apex)
    if len(C2.apex) != n:
        raise DimensionMismatchError("cones live in different dimensions")
    p, q = len(C1.generators), len(C2.generators)
    if p == 0 or q == 0:
        return None
    total = p + q
    rows = [[g[j] for g in C1.generators] + [-h[j] for h in C2.generators] for j in range(n)]
    eq = _equalities(rows + [[ONE] * p + [ZERO] * q], [ZERO] * n + [ONE])
    if eq is None:
        return None
    z = feasible_point(eq + _nonnegative(total, 0, total), total)
    if z is None:
        return None
    ray = lincomb(z[:p], C1.generators, n)
    return None if is_zero(ray) else ray


def cone_interiors_meet(C1: Cone, C2: Cone) -> Point | None:
    """A direction interior to both cones, or None.

    Both cones need their halfspace description; interiors are taken in the
    ambient space.
    """
    n = len(C1.apex)
    system = [HalfSpace(h.normal, h.offset + dot(h.normal, C.apex)) for C in (C1, C2) for h in C.halfspaces]
    if not system:
        return zeros(n)
    result = lp(zeros(n), system, LPMode.STRICT_FEASIBILITY)
    return result.witness if result.feasible else None
