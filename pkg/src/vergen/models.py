"""JSON document models.

This module contains the Pydantic models used to validate and serialize the
polytopes, zonotopes, regions, brackets and verdicts exchanged on the
command line. Rationals travel as canonical "p" or "p/q" strings.
"""

from fractions import Fraction
from typing import Annotated, Any, Optional

from pydantic import BaseModel, Field, PlainSerializer, PlainValidator, field_validator, model_validator

from .errors import UnboundedError
from .halfspace import HalfSpace
from .minkowski import Zonotope
from .polytope import EMPTY, Polytope, convex_hull, h_to_v, v_to_h
from .rational import Point, format_scalar
from .validators import parse_rational

Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_scalar, return_type=str),
]
Coordinates = list[Rational]


def _point(p: Point) -> list[Fraction]:
    return list(p)


class HalfSpaceDocument(BaseModel):
    """A halfspace {x : <normal, x> <= offset}."""

    normal: Coordinates = Field(..., description="Nonzero normal vector")
    offset: Rational = Field(..., description="Right-hand side")

    @field_validator("normal")
    def validate_normal(cls, value: list[Fraction]) -> list[Fraction]:
        """Reject the zero normal.

        Raises:
            ValueError: If every entry is zero
        """
        if not value or all(x == 0 for x in value):
            raise ValueError("normal must be a nonzero vector")
        return value

    def to_halfspace(self) -> HalfSpace:
        """The canonical halfspace."""
        return HalfSpace(tuple(self.normal), self.offset)

    @classmethod
    def from_halfspace(cls, h: HalfSpace) -> "HalfSpaceDocument":
        """Document of a halfspace."""
        return cls(normal=_point(h.normal), offset=h.offset)


class PolytopeDocument(BaseModel):
    """Polytope JSON: {"dim": n, "vertices": [...], "halfspaces": [...]}.

    Either representation may be given alone. A halfspace-only document is
    enumerated into its vertices; when both are given they must describe the
    same polytope.
    """

    dim: int = Field(..., ge=1, description="Ambient dimension")
    vertices: Optional[list[Coordinates]] = Field(None, min_length=1, description="Vertex list")
    halfspaces: Optional[list[HalfSpaceDocument]] = Field(None, min_length=1, description="Facet halfspaces")

    @model_validator(mode="after")
    def validate_lengths(self) -> "PolytopeDocument":
        """Every coordinate list must have length dim.

        Raises:
            ValueError: If neither representation is present or a length is wrong
        """
        if self.vertices is None and self.halfspaces is None:
            raise ValueError("a polytope needs vertices or halfspaces")
        for v in self.vertices or []:
            if len(v) != self.dim:
                raise ValueError(f"vertex {v} does not have dimension {self.dim}")
        for h in self.halfspaces or []:
            if len(h.normal) != self.dim:
                raise ValueError(f"halfspace normal does not have dimension {self.dim}")
        return self

    @model_validator(mode="after")
    def validate_representations(self) -> "PolytopeDocument":
        """Enumerate halfspace-only input and check that both forms agree.

        Raises:
            ValueError: If the halfspaces are empty, unbounded or disagree with the vertices
        """
        if self.halfspaces is None:
            return self
        try:
            P = h_to_v([h.to_halfspace() for h in self.halfspaces])
        except UnboundedError as e:
            raise ValueError(str(e)) from e
        if P is EMPTY:
            raise ValueError("halfspaces describe the empty set")
        if self.vertices is None:
            self.vertices = [_point(v) for v in P.vertices]
        elif convex_hull(tuple(v) for v in self.vertices) != P:
            raise ValueError("vertices and halfspaces describe different polytopes")
        return self

    def to_polytope(self) -> Polytope:
        """Hull of the listed (or enumerated) vertices."""
        return convex_hull(tuple(v) for v in self.vertices or [])

    @classmethod
    def from_polytope(cls, P: Polytope, with_halfspaces: bool = False) -> "PolytopeDocument":
        """Document of P, optionally carrying its H-representation."""
        halfspaces = [HalfSpaceDocument.from_halfspace(h) for h in v_to_h(P)] if with_halfspaces else None
        return cls(dim=P.dim, vertices=[_point(v) for v in P.vertices], halfspaces=halfspaces)


class ZonotopeDocument(BaseModel):
    """Zonotope JSON: {"dim": n, "center": [...], "generators": [[...], ...]}."""

    dim: int = Field(..., ge=1)
    center: Coordinates
    generators: list[Coordinates] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_lengths(self) -> "ZonotopeDocument":
        """Center and generators must have length dim and generators must be nonzero."""
        if len(self.center) != self.dim or any(len(g) != self.dim for g in self.generators):
            raise ValueError(f"center and generators must have dimension {self.dim}")
        if any(all(x == 0 for x in g) for g in self.generators):
            raise ValueError("generators must be nonzero")
        return self

    def to_zonotope(self) -> Zonotope:
        """The zonotope described by the document."""
        return Zonotope(tuple(self.center), tuple(tuple(g) for g in self.generators))

    @classmethod
    def from_zonotope(cls, Z: Zonotope) -> "ZonotopeDocument":
        """Document of a zonotope."""
        return cls(dim=Z.dim, center=_point(Z.center), generators=[_point(g) for g in Z.generators])


class RegionDocument(BaseModel):
    """Region dump: a list of cells, each a list of halfspaces."""

    dim: int = Field(..., ge=1)
    cells: list[list[HalfSpaceDocument]] = Field(default_factory=list)
    volume: Rational = Field(Fraction(0))


class BracketDocument(BaseModel):
    """Certified bracket for λ(P) and the derived non-convexity values."""

    lo: Rational
    hi: Rational
    lo_certified: bool
    hi_certified: bool
    c_lo: Rational
    c_hi: Rational


class NetCertificateDocument(BaseModel):
    """Covering net certificate."""

    k: int = Field(..., ge=0)
    scale: Rational
    centers: list[Coordinates]
    bound: int
    volume_bound: Rational = Field(..., description="vol(P) / vol(scale * P)")
    lambda_used: Rational


class PointCloudDocument(BaseModel):
    """Flat point list of a series partial sum."""

    level: int = Field(..., ge=0)
    lambda_: Rational = Field(..., alias="lambda")
    points: list[Coordinates]

    model_config = {
        "populate_by_name": True,
    }


class VerdictDocument(BaseModel):
    """Machine-readable verdict of a check."""

    verdict: bool
    witness: Optional[Coordinates] = None
    bracket: Optional[BracketDocument] = None
    details: dict[str, Any] = Field(default_factory=dict)


class RunConfig(BaseModel):
    """Settings of a single run; identical settings give identical output."""

    seed: int = Field(0, ge=0, lt=2**64, description="Seed for random instances")
    tol: Rational = Field(Fraction(1, 1024), description="Bracket width for λ searches")
    cell_budget: int = Field(10**6, gt=0)
    point_budget: int = Field(10**6, gt=0)
    retry_budget: int = Field(16, gt=0)
    order_bound: int = Field(24, gt=0)
    parallelism: int = Field(1, gt=0)

    @field_validator("tol")
    def validate_tol(cls, value: Fraction) -> Fraction:
        """Tolerance must be a positive rational.

        Raises:
            ValueError: If tol <= 0
        """
        if value <= 0:
            raise ValueError("tol must be positive")
        return value
