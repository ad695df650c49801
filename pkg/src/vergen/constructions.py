"""Constructions of vertex-generated polytopes.

Every constructor re-checks its result with the exact decision procedure
before returning it; a failed check raises instead of returning an
unverified object.
"""

import logging
import os
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .analysis import defect, is_vg
from .config import config
from .errors import BudgetExceededError, ParameterRangeError, PreconditionError, VerificationError
from .metrics import hausdorff_sq, point_distance_sq
from .minkowski import Zonotope, is_translate, minkowski_sum, vertex_series
from .parallel import fan_out
from .polytope import Polytope, convex_hull, intersection, is_centrally_symmetric, support
from .rational import (
    HALF,
    ONE,
    ZERO,
    Point,
    add,
    dot,
    floor_sqrt,
    lincomb,
    neg,
    norm_sq,
    nullspace,
    scale,
    solve,
    sub,
    unit,
    zeros,
)
from .region import Coverage, Region, covers, subtract
from .validators import validate_lambda, validate_positive

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

TWO = Fraction(2)

# Largest max-norm of the integer directions scanned when choosing η
DIRECTION_LIMIT = 64

# Parameters t of the rational circle points used for inscribed polygons
CIRCLE_PARAMETERS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), -Fraction(2), -ONE, -Fraction(1, 2))


@dataclass(frozen=True)
class PointCloud:
    """The partial sum Σ_{i<=level} (1 - λ)^i λ V(P), duplicates removed."""

    level: int
    lam: Fraction
    points: tuple[Point, ...]


@dataclass(frozen=True)
class NetCertificate:
    """Centers c with P covered by the translates c + scale * P."""

    k: int
    scale: Fraction
    centers: tuple[Point, ...]
    bound: int
    volume_bound: Fraction
    lambda_used: Fraction


def rational_circle_point(t: Fraction) -> Point:
    """The point ((1 - t^2)/(1 + t^2), 2t/(1 + t^2)) of the unit circle."""
    denominator = 1 + t * t
    return ((1 - t * t) / denominator, 2 * t / denominator)


def inscribed_polygon(center: Point, radius: Fraction) -> Polytope:
    """A rational polygon with every vertex at distance radius from center."""
    points = [add(center, scale(radius, rational_circle_point(t))) for t in CIRCLE_PARAMETERS]
    points.append(add(center, (-radius, ZERO)))
    return convex_hull(points)


def series_partial_sum(P: Polytope, lam: Fraction, k: int, point_budget: int | None = None) -> PointCloud:
    """Exact level-k partial sum of the vertex series of P.

    Raises:
        ParameterRangeError: If λ or k is out of range
        BudgetExceededError: If the point set outgrows the budget
    """
    validate_lambda(lam)
    if k < 0:
        raise ParameterRangeError(f"k must be nonnegative, got {k}")
    points = vertex_series(P, lam, k, point_budget or config.point_budget)
    stray = next((p for p in points if not P.contains(p)), None)
    if stray is not None:
        raise VerificationError(f"series point {stray} lies outside P")
    logger.info(f"Series level {k} at lambda={lam}: {len(points)} points")
    return PointCloud(k, lam, tuple(points))


def covering_net(P: Polytope, lam: Fraction, k: int, point_budget: int | None = None) -> NetCertificate:
    """Certified covering of P by translates of (1 - λ)^k P.

    When P is not λ-VG the Carathéodory value 1/(n+1) is used instead,
    with a warning.

    Raises:
        ParameterRangeError: If λ or k is out of range
        VerificationError: If the centers fail to cover P
    """
    validate_lambda(lam)
    if k < 0:
        raise ParameterRangeError(f"k must be nonnegative, got {k}")
    n = P.affine_dim
    used = lam
    if not is_vg(P, lam):
        used = Fraction(1, n + 1)
        logger.warning(f"Polytope is not {lam}-vertex generated; clamping lambda to {used}")
    shrink = (ONE - used) ** k
    centers = vertex_series(P, used, k - 1, point_budget or config.point_budget)
    outcome = covers(P, [P.homothety(shrink, c) for c in centers])
    if not outcome:
        raise VerificationError(f"net of {len(centers)} centers leaves {outcome.point} uncovered")
    certificate = NetCertificate(k, shrink, tuple(centers), len(P.vertices) ** k, (ONE / shrink) ** n, used)
    logger.info(f"Covering net with {len(centers)} centers at scale {shrink} (volume bound {certificate.volume_bound})")
    return certificate


def _directions(k: int) -> Iterator[Point]:
    """Integer directions in R^k by increasing max-norm, then lexicographically."""
    for h in range(1, DIRECTION_LIMIT + 1):
        for c in product(range(-h, h + 1), repeat=k):
            if max(abs(x) for x in c) == h:
                yield tuple(Fraction(x) for x in c)


def _extreme_pair(points: Sequence[Point], eta: Point) -> tuple[int, int] | None:
    """Indices of the unique maximizer and minimizer of η, or None on ties."""
    values = [dot(eta, p) for p in points]
    top, bottom = max(values), min(values)
    if values.count(top) != 1 or values.count(bottom) != 1:
        return None
    return values.index(top), values.index(bottom)


def _spanning_generators(points: Sequence[Point], eta: Point, upper: int, lower: int) -> list[Point]:
    """Generators g_i of η^⊥ with every point in [u1, u2] + Σ[-g_i, g_i].

    Each extent is the largest coefficient of a point's offset from the
    segment [u1, u2], plus a margin of 1.
    """
    basis = nullspace([eta], len(eta))
    if not basis:
        return []
    u1, u2 = points[upper], points[lower]
    axis = sub(u1, u2)
    span = dot(eta, axis)
    gram = [[dot(a, b) for b in basis] for a in basis]
    extents = [ZERO] * len(basis)
    for x in points:
        offset = sub(x, u2)
        residual = sub(offset, scale(dot(eta, offset) / span, axis))
        coefficients = solve(gram, [dot(b, residual) for b in basis])
        if coefficients is None:
            raise VerificationError("degenerate basis of the orthogonal complement")
        extents = [max(e, abs(c)) for e, c in zip(extents, coefficients, strict=True)]
    return [scale(e + ONE, b) for e, b in zip(extents, basis, strict=True)]


def _flat_generators(P: Polytope, skip: int = 0, accept: Callable[[Point], bool] | None = None) -> list[Point]:
    """Ambient generators of Z' ⊂ η^⊥ with P ⊆ [u1, u2] + Z', computed in P's own coordinates.

    Args:
        P: The polytope, of any affine dimension
        skip: Number of admissible choices of η to pass over
        accept: Extra condition every lifted generator must satisfy
    """
    local = [P.affine.to_intrinsic(v) for v in P.vertices]
    seen = 0
    for eta in _directions(P.affine_dim):
        pair = _extreme_pair(local, eta)
        if pair is None:
            continue
        generators = [lincomb(g, P.affine.basis, P.dim) for g in _spanning_generators(local, eta, *pair)]
        if accept is not None and not all(accept(g) for g in generators):
            continue
        if seen == skip:
            logger.debug(f"Chose eta={eta} with extreme vertices {pair}")
            return generators
        seen += 1
    raise VerificationError(f"no admissible direction with max-norm <= {DIRECTION_LIMIT}")


def _with_segments(P: Polytope, generators: Sequence[Point]) -> Polytope:
    if not generators:
        return P
    return minkowski_sum(P, Zonotope(zeros(P.dim), tuple(generators)).to_polytope())


def _augment(P: Polytope) -> list[Point]:
    k = P.affine_dim
    if k <= 1 or is_vg(P, HALF):
        return []
    generators: list[Point] = []
    if k > 2:
        for face in P.faces_of_dim(k - 1):
            generators.extend(_augment(P.face_polytope(face)))
    return generators + _flat_generators(_with_segments(P, generators))


def augment_to_vg(P: Polytope) -> Zonotope:
    """A zonotope Z centered at the origin with P + Z vertex generated.

    Facets are augmented first, which makes every face of P + Z vertex
    generated; a last zonotope orthogonal to a direction η with unique
    extreme vertices u1, u2 of that sum then covers it by [u1, u2] + Z'.

    Raises:
        ParameterRangeError: If P lives in dimension above 3
        VerificationError: If P + Z fails the exact check
    """
    if P.dim > 3:
        raise ParameterRangeError(f"augment_to_vg supports dimension <= 3, got {P.dim}")
    Z = Zonotope(zeros(P.dim), tuple(_augment(P)))
    if Z.generators:
        outcome = is_vg(minkowski_sum(P, Z.to_polytope()), HALF)
        if not outcome:
            raise VerificationError(f"P + Z is not vertex generated; witness {outcome.point}")
    logger.info(f"Augmenting zonotope has {len(Z.generators)} generators")
    return Z


def _boundary_cycle(P: Polytope) -> list[int]:
    """Vertex indices of a polygon in counterclockwise order."""
    neighbours: dict[int, list[int]] = {i: [] for i in range(len(P.vertices))}
    for i, j in P.edges():
        neighbours[i].append(j)
        neighbours[j].append(i)
    cycle = [0, neighbours[0][0]]
    while len(cycle) < len(P.vertices):
        previous, current = cycle[-2], cycle[-1]
        a, b = neighbours[current]
        cycle.append(b if a == previous else a)
    v = P.vertices
    first, second = sub(v[cycle[1]], v[cycle[0]]), sub(v[cycle[2]], v[cycle[1]])
    if first[0] * second[1] - first[1] * second[0] < 0:
        cycle.reverse()
    return cycle


def _arc_points(a: Point, b: Point, m: Fraction, count: int) -> list[Point]:
    """Rational points on the outward circular arc over the chord [a, b].

    In the frame e + x*d/2 + y*n/2 (e the midpoint, d = b - a, n the outward
    normal of the same length) the circle passes through (-1, 0) and (1, 0)
    with center (0, -m). The line through (-1, 0) with slope s in (0, 1/m)
    meets it again at x = tau - 1, y = s*tau with tau = 2(1 - s*m)/(1 + s^2).
    """
    d = sub(b, a)
    n = (d[1], -d[0])
    e = scale(HALF, add(a, b))
    out = []
    for j in range(1, count + 1):
        s = Fraction(j, count + 1) / m
        tau = 2 * (1 - s * m) / (1 + s * s)
        out.append(add(e, add(scale((tau - 1) / 2, d), scale(s * tau / 2, n))))
    return out


def _bulges(P: Polytope, cycle: Sequence[int], eps: Fraction) -> list[Fraction]:
    """Smallest integer m per edge with |d|/(4m) < eps, which bounds the arc height."""
    out = []
    for idx, i in enumerate(cycle):
        d = sub(P.vertices[cycle[(idx + 1) % len(cycle)]], P.vertices[i])
        out.append(floor_sqrt(norm_sq(d) / (16 * eps * eps), 1) + 1)
    return out


def _densified(P: Polytope, cycle: Sequence[int], bulges: Sequence[Fraction], count: int) -> Polytope | None:
    """Hull of V(P) and count arc points per edge, or None if an arc condition fails.

    Each reflected arc point 2e - p must stay in P, and every arc point must
    be a vertex of the hull.
    """
    vs = P.vertices
    points = list(vs)
    for idx, i in enumerate(cycle):
        a, b = vs[i], vs[cycle[(idx + 1) % len(cycle)]]
        arc = _arc_points(a, b, bulges[idx], count)
        doubled = add(a, b)
        if not all(P.contains(sub(doubled, p)) for p in arc):
            return None
        points.extend(arc)
    Q = convex_hull(points)
    return Q if len(Q.vertices) == len(points) else None


def _candidate(P: Polytope, cycle: Sequence[int], bulges: Sequence[Fraction], count: int) -> Polytope:
    current = list(bulges)
    for _ in range(DIRECTION_LIMIT):
        Q = _densified(P, cycle, current, count)
        if Q is not None:
            return Q
        current = [TWO * m for m in current]
    raise VerificationError("arc conditions never held while flattening the bulges")


def _half_vg(Q: Polytope) -> bool:
    return bool(is_vg(Q, HALF))


def densify2d(
    P: Polytope,
    eps: Fraction,
    retry_budget: int | None = None,
    parallelism: int | None = None,
) -> Polytope:
    """A vertex-generated polygon Q ⊇ P with d_H(P, Q) < eps.

    Every edge gets an outward circular bulge of height below eps, sampled
    at rational points; the sampling doubles on every refinement until the
    hull passes the exact check. Candidates are checked in parallel batches
    and the first verified one in refinement order wins.

    Raises:
        PreconditionError: If P is not a full-dimensional polygon
        BudgetExceededError: If no refinement within the retry budget verifies;
            the best candidate is attached
    """
    validate_positive(eps, "eps")
    if P.dim != 2 or not P.is_full_dimensional:
        raise PreconditionError("densify2d needs a full-dimensional polygon in R^2")
    if is_centrally_symmetric(P) is not None or is_vg(P, HALF):
        logger.info("Polygon is already vertex generated")
        return P
    cycle = _boundary_cycle(P)
    bulges = _bulges(P, cycle, eps)
    budget = retry_budget or config.retry_budget
    workers = max(1, parallelism or config.threads)
    last = P
    for start in range(0, budget, workers):
        batch = [_candidate(P, cycle, bulges, 2**r) for r in range(start, min(budget, start + workers))]
        for Q, ok in zip(batch, fan_out(_half_vg, batch, workers), strict=True):
            if ok:
                distance = hausdorff_sq(P, Q)
                if distance >= eps * eps:
                    raise VerificationError(f"squared Hausdorff distance {distance} is not below {eps * eps}")
                logger.info(f"Densified polygon with {len(Q.vertices)} vertices, d_H^2 = {distance}")
                return Q
        last = batch[-1]
        logger.debug(f"Refinements up to {start + len(batch)} failed")
    report = defect(last, HALF)
    raise BudgetExceededError("retry", budget, f"best candidate has defect volume {report.volume}", candidate=last)


def lift_symmetric(
    P: Polytope,
    decorate: bool = False,
    lam: Fraction = HALF,
    retry_budget: int | None = None,
) -> Polytope:
    """conv(P x {1}, -P x {-1}), optionally decorated to be λ-VG.

    The decoration adds, for every facet that is neither the top nor the
    bottom and is not λ-VG, a zonotope inside the facet's direction space
    whose generators leave e_{n+1}^⊥. This keeps the top facet a translate
    of P.

    Raises:
        ParameterRangeError: If P is too high-dimensional for the requested lift
        PreconditionError: If the decorated lift is requested for a non-λ-VG P
        BudgetExceededError: If no decoration verifies within the retry budget
    """
    n = P.dim
    cap = 2 if decorate else 3
    if n > cap:
        raise ParameterRangeError(f"lift_symmetric supports dimension <= {cap} here, got {n}")
    top = [v + (ONE,) for v in P.vertices]
    bottom = [neg(v) + (-ONE,) for v in P.vertices]
    lifted = convex_hull(top + bottom)
    if not decorate:
        return lifted
    validate_lambda(lam)
    if not is_vg(P, lam):
        raise PreconditionError(f"P is not {lam}-vertex generated")
    if is_vg(lifted, lam):
        return lifted

    def off_horizontal(g: Point) -> bool:
        return g[-1] != 0

    budget = retry_budget or config.retry_budget
    for attempt in range(budget):
        generators: list[Point] = []
        for face in lifted.faces_of_dim(lifted.affine_dim - 1):
            F = lifted.face_polytope(face)
            if len({v[-1] for v in F.vertices}) == 1 or is_vg(F, lam):
                continue
            generators.extend(_flat_generators(F, skip=attempt, accept=off_horizontal))
        Q = _with_segments(lifted, generators)
        if is_vg(Q, lam):
            _, roof = support(Q, unit(n + 1, n))
            if is_translate(P, convex_hull(v[:-1] for v in roof.vertices)) is None:
                raise VerificationError("top facet of the decorated lift is not a translate of P")
            logger.info(f"Decorated lift with {len(generators)} extra segments verified")
            return Q
        logger.debug(f"Decoration attempt {attempt} is not {lam}-vertex generated")
    raise BudgetExceededError("retry", budget, "decorated lift never verified")


def local_radius(P: Polytope, u: Point) -> Fraction:
    """Squared radius r^2 = (1/4) min d(u, E)^2 over the edges E not containing u.

    The minimum is squared before the quarter is taken, so r is half the
    distance to the nearest such edge. At the midpoint of an edge of the unit
    square the nearest other edges are 1/2 away, giving r^2 = 1/16 (r = 1/4),
    not r = 1/2.

    Raises:
        PreconditionError: If P is not a full-dimensional polygon or u is not on its boundary
    """
    if P.dim != 2 or not P.is_full_dimensional:
        raise PreconditionError("local_radius needs a full-dimensional polygon in R^2")
    if not P.contains(u) or P.contains(u, strict=True):
        raise PreconditionError(f"{u} is not on the boundary")
    distances = []
    for face in P.faces_of_dim(1):
        edge = P.face_polytope(face)
        if not edge.contains(u):
            distances.append(point_distance_sq(edge, u))
    return min(distances) / 4


def verify_local_radius(P: Polytope, u: Point) -> Coverage:
    """Decide P ∩ B = (P + u)/2 ∩ B for a rational polygon B inscribed in u + rB.

    (P + u)/2 ⊆ P always, so only P ∩ B ⊆ (P + u)/2 needs checking.
    """
    r_sq = local_radius(P, u)
    denominator = 16
    radius = floor_sqrt(r_sq, denominator)
    while radius == 0:
        denominator *= 16
        radius = floor_sqrt(r_sq, denominator)
    window = intersection(inscribed_polygon(u, radius), P.facets)
    if window is None:
        raise VerificationError("inscribed polygon misses P")
    return covers(window, [P.homothety(HALF, scale(HALF, u))])


def fractal_envelope(
    P: Polytope,
    lam: Fraction,
    k: int,
    point_budget: int | None = None,
    cell_budget: int | None = None,
) -> Region:
    """Union of s + (1 - λ)^(k+1) P over the level-k series points, as disjoint cells.

    Every piece lies in P. For the triangle at λ = 1/2 these are the
    Sierpinski stages.
    """
    validate_lambda(lam)
    if k < 0:
        raise ParameterRangeError(f"k must be nonnegative, got {k}")
    shrink = (ONE - lam) ** (k + 1)
    pieces = [P.homothety(shrink, s) for s in vertex_series(P, lam, k, point_budget or config.point_budget)]
    cells: list[Polytope] = []
    for i, piece in enumerate(pieces):
        part = Region.of(piece)
        for earlier in pieces[:i]:
            part = subtract(part, earlier, cell_budget)
            if part.is_empty():
                break
        cells.extend(part.cells)
    logger.info(f"Envelope level {k}: {len(pieces)} pieces, {len(cells)} cells")
    return Region(P.affine, tuple(cells))
