"""Finite unions of interior-disjoint convex cells.

The coverage decision is made on interiors: P is covered by closed pieces
exactly when P minus the union of the pieces has empty interior. Since the
pieces are closed and P is the closure of its interior, this is the same as
the set equality P = union of (P intersected with the pieces).
"""

import logging
import os
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

from .config import config
from .errors import BudgetExceededError, DimensionMismatchError
from .halfspace import HalfSpace
from .polytope import AffineHull, Polytope, clip, convex_hull, intersection, section
from .rational import ONE, ZERO, Point, add, centroid, dot, lincomb, scale, sub

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))


@dataclass(frozen=True)
class Covered:
    """Coverage holds."""

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Witness:
    """A point interior to the covered set and outside every piece."""

    point: Point

    def __bool__(self) -> bool:
        return False


Coverage = Covered | Witness


@dataclass(frozen=True)
class Region:
    """Cells of equal dimension inside one affine hull, pairwise interior-disjoint."""

    affine: AffineHull
    cells: tuple[Polytope, ...] = field(default=())

    @classmethod
    def of(cls, P: Polytope) -> "Region":
        """Region of the single cell P."""
        return cls(P.affine, (P,))

    @property
    def dim(self) -> int:
        """Ambient dimension."""
        return self.affine.ambient_dim

    @property
    def cell_dim(self) -> int:
        """Common dimension of the cells."""
        return self.affine.dim

    def is_empty(self) -> bool:
        """Whether the region has no cells."""
        return not self.cells

    @property
    def volume(self) -> Fraction:
        """Total volume in the intrinsic coordinates of the hull."""
        return volume(self)

    def contains(self, x: Point, strict: bool = False) -> bool:
        """Whether some cell contains x."""
        return any(c.contains(x, strict) for c in self.cells)


def volume(R: Region) -> Fraction:
    """Sum of the cell volumes, in the intrinsic coordinates of the hull."""
    return sum((c.volume for c in R.cells), ZERO)


def _cutting_halfspaces(R: Region, Q: Polytope) -> list[HalfSpace] | None:
    """Facets of Q restricted to R's hull, or None when Q has no interior there."""
    if Q.dim != R.dim:
        raise DimensionMismatchError(f"region in R^{R.dim}, polytope in R^{Q.dim}")
    if R.cell_dim == R.dim:
        return list(Q.facets) if Q.is_full_dimensional else None
    restricted = section(Q, R.affine)
    if restricted is None or restricted.affine_dim < R.cell_dim:
        return None
    return list(restricted.facets)


def _subtract_cell(cell: Polytope, halfspaces: Sequence[HalfSpace], k: int) -> list[Polytope]:
    values = [[h.value(v) for v in cell.vertices] for h in halfspaces]
    # Some facet of Q has the whole cell on its outer side: interiors are disjoint
    if any(all(x >= 0 for x in row) for row in values):
        return [cell]
    if all(x <= 0 for row in values for x in row):
        return []
    out = []
    remaining: Polytope | None = cell
    for h, row in zip(halfspaces, values, strict=True):
        if remaining is None:
            break
        if all(x <= 0 for x in row):
            continue
        outside = clip(remaining, h.flipped())
        if outside is not None and outside.affine_dim == k:
            out.append(outside)
        remaining = clip(remaining, h)
        if remaining is not None and remaining.affine_dim < k:
            remaining = None
    return out


def subtract(R: Region, Q: Polytope, cell_budget: int | None = None) -> Region:
    """Cells covering int(R) minus Q.

    Each cell is clipped against the complements of Q's facets in canonical
    facet order; a lower-dimensional Q leaves R unchanged.

    Raises:
        BudgetExceededError: If the number of cells exceeds the budget
    """
    budget = cell_budget or config.cell_budget
    halfspaces = _cutting_halfspaces(R, Q)
    if halfspaces is None:
        return R
    cells: list[Polytope] = []
    for cell in R.cells:
        cells.extend(_subtract_cell(cell, halfspaces, R.cell_dim))
        if len(cells) > budget:
            raise BudgetExceededError("cell", budget, "region subtraction")
    return Region(R.affine, tuple(cells))


def intersect(R: Region, Q: Polytope) -> Region:
    """Cell-wise intersection with Q, keeping cells with interior."""
    halfspaces = _cutting_halfspaces(R, Q)
    if halfspaces is None:
        return Region(R.affine)
    cells = []
    for cell in R.cells:
        piece = intersection(cell, halfspaces)
        if piece is not None and piece.affine_dim == R.cell_dim:
            cells.append(piece)
    return Region(R.affine, tuple(cells))


def _pick_witness(residual: Region, pieces: Sequence[Polytope], prefer: Sequence[Point]) -> Point:
    for p in prefer:
        if residual.contains(p, strict=True) and not any(q.contains(p) for q in pieces):
            return p
    for cell in residual.cells:
        p = centroid(list(cell.vertices))
        if not any(q.contains(p) for q in pieces):
            return p
    return _off_pieces(residual.cells[0], pieces)


def _off_pieces(cell: Polytope, pieces: Sequence[Polytope]) -> Point:
    """A point strictly inside a residual cell that lies on no piece.

    Residual cells are already outside every full-dimensional piece, so only
    the affine hulls of lower-dimensional pieces can block a point. The walk
    c + t d from the centroid uses a direction d on none of those hulls, so
    each hull meets it at most once and halving t ends the search.
    """
    c = centroid(list(cell.vertices))
    offsets = [sub(v, c) for v in cell.vertices]
    normals = [a for q in pieces if not q.is_full_dimensional for a in q.affine.normals()]
    for w in count(1):
        d = lincomb([Fraction(w) ** j for j in range(len(offsets))], offsets, cell.dim)
        if all(dot(a, d) != 0 for a in normals):
            break
    t = ONE
    while True:
        p = add(c, scale(t, d))
        if cell.contains(p, strict=True) and not any(q.contains(p) for q in pieces):
            return p
        t /= 2


def _to_frame(Q: Polytope, affine: AffineHull) -> Polytope:
    return convex_hull(affine.to_intrinsic(v) for v in Q.vertices)


def residual(P: Polytope, pieces: Sequence[Polytope], cell_budget: int | None = None) -> Region:
    """The region int(P) minus every piece."""
    current = Region.of(P)
    for i, piece in enumerate(pieces):
        current = subtract(current, piece, cell_budget)
        logger.debug(f"After piece {i}: {len(current.cells)} residual cells")
        if current.is_empty():
            break
    return current


def covers(
    P: Polytope,
    pieces: Sequence[Polytope],
    prefer: Sequence[Point] = (),
    cell_budget: int | None = None,
) -> Coverage:
    """Decide whether the pieces cover P.

    Lower-dimensional P is handled in the intrinsic coordinates of its affine
    hull, where only pieces meeting it in full dimension matter.

    Args:
        P: The polytope to cover
        pieces: Closed convex pieces in the same ambient space
        prefer: Witness candidates tried before cell centroids
        cell_budget: Overrides the configured cell budget

    Returns:
        Covered, or a Witness strictly inside P and outside every piece
    """
    for piece in pieces:
        if piece.dim != P.dim:
            raise DimensionMismatchError(f"piece in R^{piece.dim} for a polytope in R^{P.dim}")
    if P.affine_dim == 0:
        x = P.vertices[0]
        return Covered() if any(q.contains(x) for q in pieces) else Witness(x)
    if not P.is_full_dimensional:
        frame = P.affine
        local_pieces = []
        for piece in pieces:
            cut = section(piece, frame)
            if cut is not None and cut.affine_dim == frame.dim:
                local_pieces.append(_to_frame(cut, frame))
        local_prefer = [frame.to_intrinsic(p) for p in prefer if frame.contains(p)]
        outcome = covers(_to_frame(P, frame), local_pieces, local_prefer, cell_budget)
        return outcome if isinstance(outcome, Covered) else Witness(frame.from_intrinsic(outcome.point))

    rest = residual(P, pieces, cell_budget)
    if rest.is_empty():
        return Covered()
    return Witness(_pick_witness(rest, pieces, prefer))


def contained_in(R: Region, S: Region, cell_budget: int | None = None) -> Coverage:
    """Whether int(R) is contained in S (up to boundary)."""
    for cell in R.cells:
        outcome = covers(cell, S.cells, cell_budget=cell_budget)
        if isinstance(outcome, Witness):
            return outcome
    return Covered()
