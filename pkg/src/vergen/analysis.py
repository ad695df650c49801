"""Decision procedures for vertex-generated polytopes.

P is λ-vertex generated when P = (1 - λ)P + λV(P), i.e. when P is covered
by the pieces λv + (1 - λ)P over its vertices v. Every check here reduces to
coverage questions answered exactly by ``region.covers``.
"""

import logging
import math
import os
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cone import cone_interiors_meet, cones_meet, normal_cone
from .config import config
from .errors import (
    FiniteOrderError,
    ParameterRangeError,
    PreconditionError,
    VerificationError,
)
from .lp import feasible_point
from .metrics import dF_sq
from .minkowski import (
    LinearMap,
    Segment,
    add_segment,
    is_translate,
    linear_image,
    minkowski_sum,
    vertex_series,
)
from .parallel import fan_out
from .polytope import Face, Polytope, convex_hull, is_centrally_symmetric, v_to_h
from .rational import HALF, ONE, Point, add, centroid, neg, scale, sub, zeros
from .region import Covered, Coverage, Region, Witness, contained_in, covers, residual
from .validators import validate_lambda, validate_positive

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))


@dataclass(frozen=True)
class LambdaBracket:
    """Certified enclosure lo <= λ(P) <= hi."""

    lo: Fraction
    hi: Fraction
    lo_certified: bool
    hi_certified: bool

    @property
    def width(self) -> Fraction:
        """Upper minus lower end."""
        return self.hi - self.lo

    @property
    def c_lo(self) -> Fraction:
        """Lower bound on the non-convexity parameter c(V(P)) = (1 - λ)/λ."""
        return (ONE - self.hi) / self.hi

    @property
    def c_hi(self) -> Fraction:
        """Upper bound on the non-convexity parameter, from the lower end."""
        return (ONE - self.lo) / self.lo


@dataclass(frozen=True)
class DefectReport:
    """The defect region P minus ((1 - λ)P + λV(P))."""

    region: Region
    volume: Fraction
    witness: Point | None


def vg_pieces(P: Polytope, lam: Fraction) -> list[Polytope]:
    """The pieces λv + (1 - λ)P, one per vertex, in vertex order."""
    return [P.homothety(ONE - lam, scale(lam, v)) for v in P.vertices]


def is_vg(P: Polytope, lam: Fraction, cell_budget: int | None = None) -> Coverage:
    """Decide whether P is λ-vertex generated.

    Raises:
        ParameterRangeError: If λ is outside (0, 1/2]
    """
    validate_lambda(lam)
    outcome = covers(P, vg_pieces(P, lam), prefer=[centroid(list(P.vertices))], cell_budget=cell_budget)
    logger.debug(f"is_vg(lambda={lam}) on {P!r}: {bool(outcome)}")
    return outcome


def defect(P: Polytope, lam: Fraction, cell_budget: int | None = None) -> DefectReport:
    """Exact defect region with its volume and an interior witness."""
    validate_lambda(lam)
    rest = residual(P, vg_pieces(P, lam), cell_budget)
    witness = None
    if not rest.is_empty():
        outcome = covers(P, vg_pieces(P, lam), prefer=[centroid(list(P.vertices))], cell_budget=cell_budget)
        witness = outcome.point if isinstance(outcome, Witness) else None
    return DefectReport(rest, rest.volume, witness)


def caratheodory_check(P: Polytope) -> Coverage:
    """is_vg at 1/(k+1), which holds for every k-dimensional polytope."""
    return is_vg(P, Fraction(1, P.affine_dim + 1)) if P.affine_dim > 0 else Covered()


def _dyadic_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest power-of-two denominator strictly inside (lo, hi)."""
    j = 0
    while True:
        d = 2**j
        a = math.floor(lo * d) + 1
        if Fraction(a, d) < hi:
            return Fraction(a, d)
        j += 1


def _probe_points(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    step = (hi - lo) / (count + 1)
    return [_dyadic_between(lo + j * step - step / 2, lo + j * step + step / 2) for j in range(1, count + 1)]


def _probe(task: tuple[Polytope, Fraction, int | None]) -> bool:
    P, lam, budget = task
    return bool(is_vg(P, lam, budget))


def lambda_of(
    P: Polytope,
    tol: Fraction,
    parallelism: int | None = None,
    cell_budget: int | None = None,
) -> LambdaBracket:
    """Certified bracket for λ(P) of width at most tol.

    Membership is monotone in λ, so a bisection over dyadic probes keeps
    lo (certified true) and hi (certified false) around λ(P). Several probes
    per round are evaluated in parallel when parallelism > 1.

    Raises:
        ParameterRangeError: If tol <= 0
    """
    validate_positive(tol, "tol")
    if P.affine_dim == 0 or is_vg(P, HALF, cell_budget):
        return LambdaBracket(HALF, HALF, True, True)
    workers = parallelism or config.threads
    lo = Fraction(1, P.affine_dim + 1)
    hi = HALF
    lo_certified = bool(is_vg(P, lo, cell_budget))
    if not lo_certified:
        raise VerificationError(f"is_vg failed at the Caratheodory value {lo}")
    while hi - lo > tol:
        probes = _probe_points(lo, hi, max(1, workers))
        verdicts = fan_out(_probe, [(P, p, cell_budget) for p in probes], workers)
        for p, ok in zip(probes, verdicts, strict=True):
            if ok:
                lo = max(lo, p)
            else:
                hi = min(hi, p)
        logger.debug(f"lambda bracket [{lo}, {hi}]")
    logger.info(f"lambda(P) in [{lo}, {hi}]")
    return LambdaBracket(lo, hi, lo_certified, True)


def nonconvexity_parameter(bracket: LambdaBracket) -> tuple[Fraction, Fraction]:
    """Bounds (c_lo, c_hi) on c(V(P)) from λ(P) = 1/(1 + c)."""
    return bracket.c_lo, bracket.c_hi


@dataclass(frozen=True)
class VertexBoundReport:
    """|V(P)| against the lower bound (1/(1 - λ))^n."""

    passed: bool
    vertex_count: int
    bound: Fraction
    equality: bool
    affine_cube: bool | None = None


def _is_affine_cube(P: Polytope) -> bool:
    """Whether the vertices are v0 + sum of subsets of n edge vectors at v0."""
    n = P.dim
    if len(P.vertices) != 2**n:
        return False
    v0 = P.vertices[0]
    neighbours = [j if i == 0 else i for i, j in P.edges() if 0 in (i, j)]
    if len(neighbours) != n:
        return False
    edges = [sub(P.vertices[j], v0) for j in neighbours]
    corners = set()
    for choice in product((0, 1), repeat=n):
        point = v0
        for bit, e in zip(choice, edges, strict=True):
            if bit:
                point = add(point, e)
        corners.add(point)
    return corners == set(P.vertices)


def vertex_bound_check(P: Polytope, lam: Fraction) -> VertexBoundReport:
    """Check |V(P)| >= (1/(1 - λ))^n for a full-dimensional λ-VG polytope.

    Equality is flagged; with 2^n vertices the polytope is then checked to be
    an affine image of the cube.

    Raises:
        PreconditionError: If P is lower-dimensional or not λ-VG
    """
    validate_lambda(lam)
    if not P.is_full_dimensional:
        raise PreconditionError("vertex_bound_check needs a full-dimensional polytope")
    if not is_vg(P, lam):
        raise PreconditionError(f"polytope is not {lam}-vertex generated")
    bound = (ONE / (ONE - lam)) ** P.dim
    count = len(P.vertices)
    equality = count == bound
    cube = _is_affine_cube(P) if equality and count == 2**P.dim else None
    if equality:
        logger.info(f"Vertex bound attained with {count} vertices; affine cube: {cube}")
    return VertexBoundReport(count >= bound, count, bound, equality, cube)


def volume_vertex_bound(P: Polytope, lam: Fraction) -> tuple[Fraction, Fraction, bool]:
    """Compare vol(P) with |V(P)| vol((1 - λ)P).

    Returns:
        (vol(P), |V(P)| * vol((1 - λ)P), whether the first is at most the second)
    """
    validate_lambda(lam)
    vol = P.volume
    covered = len(P.vertices) * (ONE - lam) ** P.affine_dim * vol
    return vol, covered, vol <= covered


@dataclass(frozen=True)
class FaceInheritanceReport:
    """Outcome of checking the proper faces of P for λ-VG."""

    passed: bool
    counterexample: Polytope | None = None
    witness: Point | None = None
    containment_held: bool | None = None
    inheritance_violated: bool = False


def face_inheritance_check(P: Polytope, lam: Fraction) -> FaceInheritanceReport:
    """Check every proper face of P (facets first) for λ-VG.

    The first face that is not λ-VG is reported with whether it satisfied
    F ⊆ (1 - λ)P + λV(P). A face satisfying that containment but failing
    the check contradicts face inheritance and is logged as an error.
    """
    validate_lambda(lam)
    pieces = vg_pieces(P, lam)
    faces = sorted(
        (f for f in P.faces() if 0 < f.dim < P.affine_dim),
        key=lambda f: (-f.dim, f.vertices),
    )
    for face in faces:
        F = P.face_polytope(face)
        outcome = is_vg(F, lam)
        if isinstance(outcome, Witness):
            contained = bool(covers(F, pieces))
            if contained:
                logger.error(f"Face {list(face.vertices)} lies in the pieces but is not {lam}-VG")
            return FaceInheritanceReport(False, F, outcome.point, contained, contained)
    return FaceInheritanceReport(True)


def relaxed_symmetry(P: Polytope, lam: Fraction) -> bool:
    """Decide -λ(P - c) ⊆ (1 - λ)(P - c) for the vertex centroid c."""
    validate_lambda(lam)
    c = centroid(list(P.vertices))
    ratio = lam / (ONE - lam)
    return all(P.contains(tuple(ci - ratio * (vi - ci) for vi, ci in zip(v, c, strict=True))) for v in P.vertices)


@dataclass(frozen=True)
class SymmetricCriterionReport:
    """The facet-wise boundary criterion next to the direct decision."""
    criterion: bool
    direct: bool

    @property
    def agree(self) -> bool:
        """Whether the criterion and the direct decision coincide."""
        return self.criterion == self.direct


def symmetric_boundary_criterion(P: Polytope, lam: Fraction) -> SymmetricCriterionReport:
    """Decide the boundary of P lies in (1 - λ)P + λV(P), facet by facet.

    Raises:
        PreconditionError: If P is neither centrally symmetric nor relaxed-symmetric
    """
    validate_lambda(lam)
    if is_centrally_symmetric(P) is None and not relaxed_symmetry(P, lam):
        raise PreconditionError("polytope is not centrally symmetric and -λP ⊄ (1-λ)P")
    pieces = vg_pieces(P, lam)
    criterion = True
    for face in P.faces_of_dim(P.affine_dim - 1):
        if not covers(P.face_polytope(face), pieces):
            criterion = False
            break
    direct = bool(is_vg(P, lam))
    if criterion != direct:
        logger.error(f"Boundary criterion ({criterion}) disagrees with is_vg ({direct})")
    return SymmetricCriterionReport(criterion, direct)


@dataclass(frozen=True)
class GenericPairReport:
    """Generic pair verdict; a failure names the vertex pair and the shared ray."""
    generic: bool
    pair: tuple[Point, Point] | None = None
    shared_ray: Point | None = None


def generic_pair(P: Polytope, Q: Polytope) -> GenericPairReport:
    """Whether every meeting pair of vertex normal cones meets in the interior.

    Raises:
        PreconditionError: If P or Q is lower-dimensional
    """
    if not (P.is_full_dimensional and Q.is_full_dimensional):
        raise PreconditionError("generic_pair needs full-dimensional polytopes")
    cones_p = [normal_cone(P, Face(0, (i,))) for i in range(len(P.vertices))]
    cones_q = [normal_cone(Q, Face(0, (j,))) for j in range(len(Q.vertices))]
    for i, cp in enumerate(cones_p):
        for j, cq in enumerate(cones_q):
            if cone_interiors_meet(cp, cq) is not None:
                continue
            ray = cones_meet(cp, cq)
            if ray is not None:
                logger.info(f"Normal cones of {P.vertices[i]} and {Q.vertices[j]} share only boundary ray {ray}")
                return GenericPairReport(False, (P.vertices[i], Q.vertices[j]), ray)
    return GenericPairReport(True)


@dataclass(frozen=True)
class CheckReport:
    """Generic pass / counterexample result."""

    passed: bool
    witness: Point | None = None
    details: dict[str, object] = field(default_factory=dict)


def generic_sum_check(P: Polytope, Q: Polytope, lam: Fraction) -> CheckReport:
    """P + Q is λ-VG for λ-VG symmetric generic P and Q.

    Raises:
        PreconditionError: Naming the first hypothesis that fails
    """
    validate_lambda(lam)
    for name, R in (("P", P), ("Q", Q)):
        if is_centrally_symmetric(R) is None and not relaxed_symmetry(R, lam):
            raise PreconditionError(f"{name} is not centrally symmetric")
        if not is_vg(R, lam):
            raise PreconditionError(f"{name} is not {lam}-vertex generated")
    pair = generic_pair(P, Q)
    if not pair.generic:
        raise PreconditionError(f"P and Q are not a generic pair: {pair.pair}")
    outcome = is_vg(minkowski_sum(P, Q), lam)
    return CheckReport(bool(outcome), outcome.point if isinstance(outcome, Witness) else None)


def segment_monotonicity_check(P: Polytope, segment: Segment, lam: Fraction) -> CheckReport:
    """defect(P + ℓ) ⊆ defect(P) for ℓ centered at the origin.

    Raises:
        PreconditionError: If some facet of P is not λ-VG
    """
    validate_lambda(lam)
    for face in P.faces_of_dim(P.affine_dim - 1):
        if not is_vg(P.face_polytope(face), lam):
            raise PreconditionError(f"facet {list(face.vertices)} is not {lam}-vertex generated")
    half = scale(HALF, sub(segment.b, segment.a))
    summed = add_segment(P, Segment(neg(half), half))
    before = defect(P, lam).region
    after = defect(summed, lam).region
    outcome = contained_in(after, before) if not after.is_empty() else Covered()
    return CheckReport(
        bool(outcome),
        outcome.point if isinstance(outcome, Witness) else None,
        {"defect_volume": before.volume, "sum_defect_volume": after.volume},
    )


@dataclass(frozen=True)
class PvapReport:
    """Both sides of: P + V(AP) convex iff P is VG and AP is a translate of P."""

    convex: bool
    conclusion_holds: bool
    order: int
    witness: Point | None = None

    @property
    def agree(self) -> bool:
        """Whether convexity and the translate clause coincide."""
        return self.convex == self.conclusion_holds


def pvap_check(P: Polytope, A: LinearMap, order_bound: int | None = None) -> PvapReport:
    """Decide convexity of P + V(AP) and the translate clause independently.

    Raises:
        FiniteOrderError: If A^k != Id for every k up to the bound
    """
    bound = order_bound or config.order_bound
    order = A.order(bound)
    if order is None:
        raise FiniteOrderError(f"A^k != Id for all k <= {bound}")
    AP = linear_image(P, A)
    hull = minkowski_sum(P, AP)
    pieces = [P.translate(w) for w in AP.vertices]
    outcome = covers(hull, pieces)
    conclusion = bool(is_vg(P, HALF)) and is_translate(P, AP) is not None
    report = PvapReport(bool(outcome), conclusion, order, outcome.point if isinstance(outcome, Witness) else None)
    if not report.agree:
        logger.error(f"P+V(AP) convexity {report.convex} disagrees with clause {report.conclusion_holds}")
    return report


def erosion_membership(P: Polytope, Q: Polytope, lam: Fraction, x: Point) -> tuple[bool, bool]:
    """Membership of x in the erosion of defect(P) by Q and in defect(P + Q).

    Returns:
        (x - Q lies in the interior of defect(P, λ), x lies in defect(P + Q, λ))
    """
    validate_lambda(lam)
    moved = convex_hull(sub(x, w) for w in Q.vertices)
    in_lhs = all(P.contains(v, strict=True) for v in moved.vertices)
    if in_lhs:
        region = v_to_h(moved)
        for piece in vg_pieces(P, lam):
            if feasible_point(region + v_to_h(piece), P.dim) is not None:
                in_lhs = False
                break
    summed = minkowski_sum(P, Q)
    in_rhs = summed.contains(x) and not any(piece.contains(x) for piece in vg_pieces(summed, lam))
    return in_lhs, in_rhs


def _check_mu(mu: Fraction) -> None:
    if not 0 < mu < 1:
        raise ParameterRangeError(f"mu must satisfy 0 < mu < 1, got {mu}")


def _face_pieces(P: Polytope, k: int, j: int, mu: Fraction) -> list[Polytope]:
    """mu F + (1 - mu) G over k-faces F and j-faces G."""
    firsts = [P.face_polytope(f).homothety(mu, zeros(P.dim)) for f in P.faces_of_dim(k)]
    seconds = [P.face_polytope(g).homothety(ONE - mu, zeros(P.dim)) for g in P.faces_of_dim(j)]
    return [minkowski_sum(F, G) for F in firsts for G in seconds]


def skeleton_sum_check(P: Polytope, k: int, mu: Fraction) -> Coverage:
    """Decide P ⊆ union over k-faces F of ((1 - mu)P + mu F).

    Raises:
        ParameterRangeError: If k or mu is out of range
    """
    n = P.affine_dim
    if not 0 <= k < n:
        raise ParameterRangeError(f"k must satisfy 0 <= k < {n}, got {k}")
    _check_mu(mu)
    return covers(P, _face_pieces(P, k, n, mu), prefer=[centroid(list(P.vertices))])


def mixed_skeleton_check(P: Polytope, k: int, j: int, mu: Fraction) -> Coverage:
    """Decide P ⊆ union of mu F + (1 - mu) G over k-faces F and j-faces G.

    The vertex centroid is preferred as witness.
    """
    n = P.affine_dim
    if not (0 <= k <= n and 0 <= j <= n):
        raise ParameterRangeError(f"face dimensions must lie in [0, {n}]")
    _check_mu(mu)
    return covers(P, _face_pieces(P, k, j, mu), prefer=[centroid(list(P.vertices))])


def fenchel_check(P: Polytope) -> Coverage:
    """P = (n-1)/n P + 1/n (union of edges)."""
    return skeleton_sum_check(P, 1, Fraction(1, P.affine_dim))


def critical_dimension(P: Polytope) -> int:
    """Smallest k with 2P = ∂^k P + ∂^(n-k) P.

    Raises:
        ParameterRangeError: If n > 3
        VerificationError: If no k <= n/2 works
    """
    n = P.affine_dim
    if n > 3:
        raise ParameterRangeError(f"critical_dimension supports n <= 3, got {n}")
    for k in range(0, n // 2 + 1):
        if mixed_skeleton_check(P, k, n - k, HALF):
            logger.info(f"Critical dimension {k}")
            return k
    raise VerificationError(f"no k <= {n // 2} satisfies 2P = skeleton sum")


@dataclass(frozen=True)
class SimplexScanReport:
    """Outcome of the simplex minimality scan."""
    passed: bool
    simplex: bool
    probe: Fraction
    probe_verdict: bool
    bracket: LambdaBracket | None = None


def simplex_minimality_scan(P: Polytope, tol: Fraction) -> SimplexScanReport:
    """Relate λ(P) = 1/(n+1) to P being a simplex.

    A simplex must be pinned to 1/(n+1) and fail just above it (at
    1/(n+1) + tol); any other polytope must be λ-VG at some dyadic probe
    1/(n+1) + 2^-j above it.

    Raises:
        PreconditionError: If P is lower-dimensional
    """
    if not P.is_full_dimensional:
        raise PreconditionError("simplex_minimality_scan needs a full-dimensional polytope")
    validate_positive(tol, "tol")
    n = P.dim
    floor = Fraction(1, n + 1)
    if len(P.vertices) == n + 1:
        bracket = lambda_of(P, tol)
        above = floor + tol
        verdict = bool(is_vg(P, above))
        passed = bracket.hi - floor <= tol and not verdict
        return SimplexScanReport(passed, True, above, verdict, bracket)
    j = 1
    while Fraction(1, 2**j) >= tol:
        probe = floor + Fraction(1, 2**j)
        if probe <= HALF and is_vg(P, probe):
            return SimplexScanReport(True, False, probe, True)
        j += 1
    return SimplexScanReport(False, False, floor + Fraction(1, 2 ** (j - 1)), False)


def simplex_defect_envelope(S: Polytope, lam: Fraction) -> tuple[Polytope, bool]:
    """The simplex -(n - (1-λ)(1+n))S + m(S)(1 - n + (1-λ)(1+n)) and whether it contains defect(S, λ).

    Raises:
        PreconditionError: If S is not a full-dimensional simplex
        ParameterRangeError: If λ <= 1/(n+1)
    """
    validate_lambda(lam)
    n = S.dim
    if not S.is_full_dimensional or len(S.vertices) != n + 1:
        raise PreconditionError("simplex_defect_envelope needs a full-dimensional simplex")
    alpha = n - (ONE - lam) * (1 + n)
    if alpha <= 0:
        raise ParameterRangeError(f"lambda must exceed 1/{n + 1}")
    m = centroid(list(S.vertices))
    envelope = convex_hull(tuple(mi - alpha * (vi - mi) for vi, mi in zip(v, m, strict=True)) for v in S.vertices)
    region = defect(S, lam).region
    inside = region.is_empty() or bool(contained_in(region, Region.of(envelope)))
    return envelope, inside


def closedness_check(sequence: Sequence[Polytope], limit: Polytope, lam: Fraction) -> CheckReport:
    """Members λ-VG, d_F to the limit non-increasing, and the limit λ-VG."""
    validate_lambda(lam)
    distances = [dF_sq(P, limit) for P in sequence]
    members = all(bool(is_vg(P, lam)) for P in sequence)
    monotone = all(a >= b for a, b in zip(distances, distances[1:]))
    outcome = is_vg(limit, lam)
    return CheckReport(
        members and monotone and bool(outcome),
        outcome.point if isinstance(outcome, Witness) else None,
        {"members_vg": members, "distances_non_increasing": monotone, "distances": distances},
    )


def series_identity_check(P: Polytope, lam: Fraction, k: int, point_budget: int | None = None) -> Coverage:
    """Decide P ⊆ union of s + (1-λ)^(k+1) P over the level-k vertex series."""
    validate_lambda(lam)
    if k < 0:
        raise ParameterRangeError(f"k must be nonnegative, got {k}")
    shrink = (ONE - lam) ** (k + 1)
    sums = vertex_series(P, lam, k, point_budget or config.point_budget)
    return covers(P, [P.homothety(shrink, s) for s in sums])
