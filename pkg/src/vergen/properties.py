"""Seeded property suites over random instances.

Each suite draws case i from seed + i, so a single failing case can be
replayed on its own. Cases are sharded across worker processes and
reported in case order.
"""

import logging
import os
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .analysis import (
    caratheodory_check,
    face_inheritance_check,
    generic_sum_check,
    is_vg,
    pvap_check,
    segment_monotonicity_check,
    series_identity_check,
    simplex_minimality_scan,
    skeleton_sum_check,
    symmetric_boundary_criterion,
)
from .constructions import covering_net
from .errors import ParameterRangeError, PreconditionError
from .generators import random_hull, random_segment, random_zonotope
from .minkowski import LinearMap, add_segment
from .parallel import fan_out
from .polytope import Polytope
from .rational import HALF, Point
from .region import Witness

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))


@dataclass(frozen=True)
class CaseResult:
    """Outcome of one seeded case."""

    suite: str
    case: int
    passed: bool
    detail: str = ""
    witness: Point | None = None


@dataclass(frozen=True)
class SuiteReport:
    """Case results of one suite, in case order."""

    suite: str
    results: tuple[CaseResult, ...]

    @property
    def passed(self) -> bool:
        """Whether every case passed."""
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CaseResult]:
        """The failing cases."""
        return [r for r in self.results if not r.passed]


def _dimension(case: int) -> int:
    """Every fourth case is three-dimensional."""
    return 3 if case % 4 == 3 else 2


def _small_zonotope(seed: int) -> Polytope:
    return random_zonotope(2, seed, generators=3).to_polytope()


def _from_coverage(suite: str, case: int, outcome: object, detail: str = "") -> CaseResult:
    witness = outcome.point if isinstance(outcome, Witness) else None
    return CaseResult(suite, case, bool(outcome), detail, witness)


def _caratheodory(case: int, seed: int) -> CaseResult:
    P = random_hull(_dimension(case), seed)
    return _from_coverage("caratheodory", case, caratheodory_check(P))


def _zonotope(case: int, seed: int) -> CaseResult:
    Z = random_zonotope(_dimension(case), seed)
    return _from_coverage("zonotope", case, is_vg(Z.to_polytope(), HALF), f"{len(Z.generators)} generators")


def _segment(case: int, seed: int) -> CaseResult:
    P = _small_zonotope(seed)
    outcome = is_vg(add_segment(P, random_segment(2, seed + 1)), HALF)
    return _from_coverage("segment", case, outcome)


def _faces(case: int, seed: int) -> CaseResult:
    report = face_inheritance_check(random_hull(3, seed), HALF)
    detail = "face inheritance contradicted" if report.inheritance_violated else ""
    return CaseResult("faces", case, not report.inheritance_violated, detail, report.witness)


def _symmetric(case: int, seed: int) -> CaseResult:
    report = symmetric_boundary_criterion(_small_zonotope(seed), HALF)
    return CaseResult("symmetric", case, report.agree and report.direct, f"criterion={report.criterion}")


def _generic(case: int, seed: int) -> CaseResult:
    P = _small_zonotope(seed)
    Q = _small_zonotope(seed + 1)
    try:
        report = generic_sum_check(P, Q, HALF)
    except PreconditionError as e:
        return CaseResult("generic", case, True, f"skipped: {e}")
    return CaseResult("generic", case, report.passed, "", report.witness)


def _series(case: int, seed: int) -> CaseResult:
    return _from_coverage("series", case, series_identity_check(_small_zonotope(seed), HALF, 1))


def _covering(case: int, seed: int) -> CaseResult:
    P = _small_zonotope(seed)
    k = 1 + case % 2
    net = covering_net(P, HALF, k)
    return CaseResult("covering", case, len(net.centers) <= net.bound, f"{len(net.centers)} centers, bound {net.bound}")


def _skeleton(case: int, seed: int) -> CaseResult:
    P = random_hull(2, seed)
    edges = skeleton_sum_check(P, 1, HALF)
    if not edges:
        return _from_coverage("skeleton", case, edges, "edge form")
    return _from_coverage("skeleton", case, skeleton_sum_check(P, 0, Fraction(1, 3)), "vertex form")


def _simplex(case: int, seed: int) -> CaseResult:
    P = random_hull(2, seed, count=3 + case % 2)
    report = simplex_minimality_scan(P, Fraction(1, 64))
    return CaseResult("simplex", case, report.passed, f"simplex={report.simplex} probe={report.probe}")


MONOTONE_LAMBDAS = (Fraction(1, 3), Fraction(2, 5), HALF)


def _monotonicity(case: int, seed: int) -> CaseResult:
    P = random_hull(2, seed) if case % 2 else _small_zonotope(seed)
    verdicts = [bool(is_vg(P, lam)) for lam in MONOTONE_LAMBDAS]
    monotone = all(a or not b for a, b in zip(verdicts, verdicts[1:]))
    return CaseResult("monotonicity", case, monotone, f"verdicts={verdicts}")


SEGMENT_LAMBDA = Fraction(2, 5)


def _segmono(case: int, seed: int) -> CaseResult:
    P = random_hull(2, seed)
    try:
        report = segment_monotonicity_check(P, random_segment(2, seed + 1), SEGMENT_LAMBDA)
    except PreconditionError as e:
        return CaseResult("segmono", case, True, f"skipped: {e}")
    detail = f"defect {report.details['defect_volume']} -> {report.details['sum_defect_volume']}"
    return CaseResult("segmono", case, report.passed, detail, report.witness)


QUARTER_TURN = LinearMap(((0, -1), (1, 0)))


def _pvap(case: int, seed: int) -> CaseResult:
    P = random_hull(2, seed) if case % 2 else _small_zonotope(seed)
    A = LinearMap.negation(2) if case % 4 < 2 else QUARTER_TURN
    report = pvap_check(P, A)
    detail = f"convex={report.convex} clause={report.conclusion_holds}"
    return CaseResult("pvap", case, report.agree, detail, report.witness)


SUITES: dict[str, Callable[[int, int], CaseResult]] = {
    "caratheodory": _caratheodory,
    "zonotope": _zonotope,
    "segment": _segment,
    "faces": _faces,
    "symmetric": _symmetric,
    "generic": _generic,
    "series": _series,
    "covering": _covering,
    "skeleton": _skeleton,
    "simplex": _simplex,
    "monotonicity": _monotonicity,
    "pvap": _pvap,
    "segmono": _segmono,
}


def _run_case(task: tuple[str, int, int]) -> CaseResult:
    suite, case, seed = task
    return SUITES[suite](case, seed + case)


def run_suite(name: str, cases: int, seed: int = 0, parallelism: int | None = None) -> SuiteReport:
    """Run one suite over cases seeded seed, seed + 1, ...

    Raises:
        ParameterRangeError: If the suite is unknown or cases < 1
    """
    if name not in SUITES:
        raise ParameterRangeError(f"unknown suite {name!r}; expected one of {sorted(SUITES)} or 'all'")
    if cases < 1:
        raise ParameterRangeError(f"cases must be positive, got {cases}")
    results = fan_out(_run_case, [(name, i, seed) for i in range(cases)], parallelism)
    report = SuiteReport(name, tuple(results))
    logger.info(f"Suite {name}: {len(results) - len(report.failures)}/{len(results)} cases passed")
    for failure in report.failures:
        logger.error(f"Suite {name} case {failure.case} failed: {failure.detail}")
    return report


def run_suites(names: Sequence[str], cases: int, seed: int = 0, parallelism: int | None = None) -> list[SuiteReport]:
    """Run the named suites in order; "all" expands to every suite."""
    expanded = list(SUITES) if "all" in names else list(names)
    return [run_suite(name, cases, seed, parallelism) for name in expanded]
