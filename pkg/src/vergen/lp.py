"""Exact rational linear programming.

Programs are solved by cddlib (through pycddlib) in fraction mode, so
optima and witnesses are exact ``Fraction`` values. Problems are stated
over free variables ``x in R^n`` subject to halfspace constraints
``<a_i, x> <= b_i``, which cdd stores as rows ``[b_i, -a_i]``.
"""

import logging
import os
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

import cdd

from .errors import DimensionMismatchError
from .halfspace import HalfSpace
from .rational import ONE, ZERO, Point

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

NUMBER_TYPE = "fraction"


class LPMode(StrEnum):
    """What the solver is asked to decide."""

    MAX = "max"
    FEASIBILITY = "feasibility"
    STRICT_FEASIBILITY = "strict_feasibility"


class LPStatus(StrEnum):
    """Outcome of a linear program."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    """Exact LP outcome.

    For MAX, ``value`` is the optimum and ``witness`` an optimal point. For
    FEASIBILITY the witness is any feasible point. For STRICT_FEASIBILITY the
    status is OPTIMAL only when a point satisfying every constraint strictly
    exists; ``value`` then holds the achieved uniform slack.
    """

    status: LPStatus
    value: Fraction | None = None
    witness: Point | None = None

    @property
    def feasible(self) -> bool:
        """Whether the program has an optimal (hence feasible) solution."""
        return self.status is LPStatus.OPTIMAL


_STATUS = {
    cdd.LPStatusType.OPTIMAL: LPStatus.OPTIMAL,
    cdd.LPStatusType.INCONSISTENT: LPStatus.INFEASIBLE,
    cdd.LPStatusType.STRUC_INCONSISTENT: LPStatus.INFEASIBLE,
    cdd.LPStatusType.DUAL_INCONSISTENT: LPStatus.UNBOUNDED,
    cdd.LPStatusType.STRUC_DUAL_INCONSISTENT: LPStatus.UNBOUNDED,
    cdd.LPStatusType.UNBOUNDED: LPStatus.UNBOUNDED,
}


def inequality_rows(constraints: Sequence[HalfSpace], n: int) -> list[list[Fraction]]:
    """cdd inequality rows [b, -a] for <a, x> <= b."""
    rows = []
    for h in constraints:
        if h.dim != n:
            raise DimensionMismatchError(f"constraint of dimension {h.dim} in an LP over R^{n}")
        rows.append([h.offset, *(-a for a in h.normal)])
    return rows


def _solve(rows: list[list[Fraction]], objective: Sequence[Fraction]) -> LPResult:
    """Maximize <objective, x> subject to the cdd rows."""
    n = len(objective)
    if not rows:
        if any(objective):
            return LPResult(LPStatus.UNBOUNDED)
        return LPResult(LPStatus.OPTIMAL, ZERO, (ZERO,) * n)
    mat = cdd.Matrix(rows, number_type=NUMBER_TYPE)
    mat.rep_type = cdd.RepType.INEQUALITY
    mat.obj_type = cdd.LPObjType.MAX
    mat.obj_func = (ZERO, *objective)
    program = cdd.LinProg(mat)
    program.solve()
    status = _STATUS.get(program.status)
    if status is None:
        raise RuntimeError(f"cdd left the program undecided ({program.status})")
    if status is LPStatus.UNBOUNDED and any(objective) and _solve(rows, (ZERO,) * n).status is LPStatus.INFEASIBLE:
        # cdd may report dual inconsistency for an empty primal
        return LPResult(LPStatus.INFEASIBLE)
    if status is not LPStatus.OPTIMAL:
        return LPResult(status)
    witness = tuple(Fraction(x) for x in program.primal_solution)
    return LPResult(LPStatus.OPTIMAL, Fraction(program.obj_value), witness)


def lp(
    objective: Point,
    constraints: Sequence[HalfSpace],
    mode: LPMode = LPMode.MAX,
) -> LPResult:
    """Solve a linear program exactly.

    Args:
        objective: Objective vector (its length fixes the dimension n)
        constraints: Halfspaces <a_i, x> <= b_i over R^n
        mode: MAX, FEASIBILITY or STRICT_FEASIBILITY

    Returns:
        The LP result with exact optimum and witness
    """
    n = len(objective)
    rows = inequality_rows(constraints, n)
    if mode is LPMode.STRICT_FEASIBILITY:
        # maximize t subject to <a_i, x> + t <= b_i and t <= 1
        lifted = [row + [-ONE] for row in rows] + [[ONE] + [ZERO] * n + [-ONE]]
        result = _solve(lifted, (ZERO,) * n + (ONE,))
        if not result.feasible or result.value is None or result.value <= 0 or result.witness is None:
            return LPResult(LPStatus.INFEASIBLE)
        return LPResult(LPStatus.OPTIMAL, result.value, result.witness[:n])
    if mode is LPMode.FEASIBILITY:
        return _solve(rows, (ZERO,) * n)
    return _solve(rows, tuple(Fraction(c) for c in objective))


def maximize(objective: Point, constraints: Sequence[HalfSpace]) -> LPResult:
    """Maximize a linear objective over the halfspace system.

    Args:
        objective: Objective vector
        constraints: Halfspaces over the same space

    Returns:
        The exact LP result
    """
    return lp(objective, constraints, LPMode.MAX)


def feasible_point(constraints: Sequence[HalfSpace], n: int) -> Point | None:
    """Any point satisfying all constraints, or None."""
    result = lp((ZERO,) * n, constraints, LPMode.FEASIBILITY)
    return result.witness if result.feasible else None


def strictly_feasible_point(constraints: Sequence[HalfSpace], n: int) -> Point | None:
    """A point satisfying all constraints strictly, or None when the interior is empty."""
    result = lp((ZERO,) * n, constraints, LPMode.STRICT_FEASIBILITY)
    return result.witness if result.feasible else None
