"""Closed halfspaces {x : <normal, x> <= offset} in canonical scaling."""

from dataclasses import dataclass
from fractions import Fraction

from .rational import Point, ZERO, as_point, as_scalar, dot, is_zero


@dataclass(frozen=True, order=True)
class HalfSpace:
    """A closed halfspace with a nonzero normal.

    The normal is rescaled on construction so that its first nonzero entry has
    absolute value 1; two halfspaces describing the same set compare equal.
    """

    normal: Point
    offset: Fraction

    def __post_init__(self) -> None:
        normal = as_point(self.normal)
        offset = as_scalar(self.offset)
        if is_zero(normal):
            raise ValueError("halfspace normal must be nonzero")
        lead = abs(next(x for x in normal if x != 0))
        if lead != 1:
            normal = tuple(x / lead for x in normal)
            offset = offset / lead
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", offset)

    @property
    def dim(self) -> int:
        """Ambient dimension."""
        return len(self.normal)

    def value(self, x: Point) -> Fraction:
        """Signed slack <normal, x> - offset (nonpositive inside)."""
        return dot(self.normal, x) - self.offset

    def contains(self, x: Point, strict: bool = False) -> bool:
        """Whether x satisfies the inequality (strictly when strict is set)."""
        v = self.value(x)
        return v < ZERO if strict else v <= ZERO

    def on_boundary(self, x: Point) -> bool:
        """Whether x lies on the bounding hyperplane."""
        return self.value(x) == ZERO

    def flipped(self) -> "HalfSpace":
        """The closed complementary halfspace {<normal, x> >= offset}."""
        return HalfSpace(tuple(-a for a in self.normal), -self.offset)
