"""Unit tests for the vergen JSON document models.

This module contains tests for the Pydantic models defined in models.py
to verify proper validation and serialization behavior.
"""

import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.vergen.halfspace import HalfSpace
from src.vergen.minkowski import Zonotope
from src.vergen.models import (
    BracketDocument,
    HalfSpaceDocument,
    NetCertificateDocument,
    PointCloudDocument,
    PolytopeDocument,
    RegionDocument,
    RunConfig,
    VerdictDocument,
    ZonotopeDocument,
)
from src.vergen.polytope import v_to_h


# Test data
TRIANGLE_JSON = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1/4", "1/4"]]}


# Test PolytopeDocument
def test_polytope_document_valid():
    """Test parsing a polytope document with rational strings."""
    # Act
    document = PolytopeDocument(**TRIANGLE_JSON)

    # Assert
    assert document.dim == 2
    assert document.vertices[3] == [Fraction(1, 4), Fraction(1, 4)]
    assert document.halfspaces is None


def test_polytope_document_to_polytope_drops_interior_points():
    """Test that to_polytope takes the hull of the listed points."""
    # Act
    P = PolytopeDocument(**TRIANGLE_JSON).to_polytope()

    # Assert
    assert P.vertices == ((0, 0), (0, 1), (1, 0))


def test_polytope_document_integers_and_non_reduced():
    """Test that ints and non-reduced fractions are accepted and dumped canonically."""
    # Arrange
    document = PolytopeDocument(dim=1, vertices=[[0], ["2/4"]])

    # Act
    dumped = document.model_dump(mode="json", exclude_none=True)

    # Assert
    assert dumped == {"dim": 1, "vertices": [["0"], ["1/2"]]}


def test_polytope_document_round_trip_with_halfspaces(square):
    """Test serialization of a polytope with its H-representation."""
    # Act
    document = PolytopeDocument.from_polytope(square, with_halfspaces=True)
    parsed = PolytopeDocument.model_validate_json(document.model_dump_json())

    # Assert
    assert parsed.halfspaces is not None
    assert len(parsed.halfspaces) == 4
    assert parsed.to_polytope() == square


def test_polytope_document_from_halfspaces_only():
    """Test that a halfspace-only document is enumerated into vertices."""
    # Arrange
    data = {
        "dim": 2,
        "halfspaces": [
            {"normal": ["-1", "0"], "offset": "0"},
            {"normal": ["0", "-1"], "offset": "0"},
            {"normal": ["1", "1"], "offset": "1"},
        ],
    }

    # Act
    document = PolytopeDocument(**data)

    # Assert
    assert document.vertices == [[0, 0], [0, 1], [1, 0]]
    assert document.to_polytope() == PolytopeDocument(**TRIANGLE_JSON).to_polytope()


def test_polytope_document_representations_must_agree(square):
    # Arrange
    halfspaces = [HalfSpaceDocument.from_halfspace(h) for h in v_to_h(square)]

    # Act & Assert
    with pytest.raises(ValidationError, match="different polytopes"):
        PolytopeDocument(dim=2, vertices=[["0", "0"], ["1", "0"], ["0", "1"]], halfspaces=halfspaces)


def test_polytope_document_needs_a_representation():
    with pytest.raises(ValidationError, match="vertices or halfspaces"):
        PolytopeDocument(dim=2)


def test_polytope_document_rejects_empty_and_unbounded_halfspaces():
    # Arrange
    empty = [{"normal": ["1"], "offset": "0"}, {"normal": ["-1"], "offset": "-1"}]
    unbounded = [{"normal": ["1"], "offset": "0"}]

    # Act & Assert
    with pytest.raises(ValidationError, match="empty set"):
        PolytopeDocument(dim=1, halfspaces=empty)
    with pytest.raises(ValidationError, match="unbounded"):
        PolytopeDocument(dim=1, halfspaces=unbounded)


def test_polytope_document_wrong_length():
    """Test that vertex lengths must match dim."""
    with pytest.raises(ValidationError):
        PolytopeDocument(dim=2, vertices=[["0", "0"], ["1"]])


def test_polytope_document_invalid_values():
    """Test rejection of empty vertex lists, bad rationals and dim < 1."""
    # Arrange
    invalid = [
        {"dim": 2, "vertices": []},
        {"dim": 2, "vertices": [["0", "1/0"]]},
        {"dim": 2, "vertices": [["0", "0.5"]]},
        {"dim": 0, "vertices": [[]]},
    ]

    # Act & Assert
    for data in invalid:
        with pytest.raises(ValidationError):
            PolytopeDocument(**data)


# Test HalfSpaceDocument
def test_halfspace_document_zero_normal():
    """Test that the zero normal is rejected."""
    with pytest.raises(ValidationError):
        HalfSpaceDocument(normal=["0", "0"], offset="1")


def test_halfspace_document_canonical_scaling():
    """Test that to_halfspace rescales the first nonzero normal entry to ±1."""
    # Act
    h = HalfSpaceDocument(normal=["2", "4"], offset="6").to_halfspace()

    # Assert
    assert h == HalfSpace((1, 2), 3)


# Test ZonotopeDocument
def test_zonotope_document_valid():
    """Test conversion of a zonotope document."""
    # Arrange
    data = {"dim": 2, "center": ["0", "0"], "generators": [["1", "0"], ["0", "1"]]}

    # Act
    Z = ZonotopeDocument(**data).to_zonotope()

    # Assert
    assert Z == Zonotope((0, 0), ((1, 0), (0, 1)))
    assert len(Z.to_polytope().vertices) == 4


def test_zonotope_document_rejects_zero_generator():
    with pytest.raises(ValidationError):
        ZonotopeDocument(dim=2, center=["0", "0"], generators=[["0", "0"]])


def test_zonotope_document_from_zonotope():
    # Act
    dumped = ZonotopeDocument.from_zonotope(Zonotope((Fraction(1, 2),), ((Fraction(3),),))).model_dump(mode="json")

    # Assert
    assert dumped == {"dim": 1, "center": ["1/2"], "generators": [["3"]]}


# Test result documents
def test_point_cloud_document_alias():
    """Test that the λ field is serialized as "lambda" and accepts either name."""
    # Arrange
    by_alias = PointCloudDocument.model_validate({"level": 0, "lambda": "1/2", "points": [["0", "0"]]})
    by_name = PointCloudDocument(level=0, lambda_=Fraction(1, 2), points=[[0, 0]])

    # Act
    dumped = by_name.model_dump(mode="json", by_alias=True)

    # Assert
    assert by_alias == by_name
    assert dumped == {"level": 0, "lambda": "1/2", "points": [["0", "0"]]}


def test_verdict_document_minimal_dump():
    """Test that a bare passing verdict dumps as {"verdict": true}."""
    # Act
    dumped = VerdictDocument(verdict=True).model_dump(mode="json", exclude_defaults=True)

    # Assert
    assert json.dumps(dumped) == '{"verdict": true}'


def test_verdict_document_with_witness_and_bracket():
    # Arrange
    bracket = BracketDocument(
        lo="1/3", hi="11/32", lo_certified=True, hi_certified=True, c_lo="21/11", c_hi="2"
    )

    # Act
    dumped = VerdictDocument(verdict=False, witness=["1/3", "1/3"], bracket=bracket).model_dump(mode="json")

    # Assert
    assert dumped["witness"] == ["1/3", "1/3"]
    assert dumped["bracket"]["hi"] == "11/32"
    assert dumped["details"] == {}


def test_region_and_net_documents():
    # Arrange
    region = RegionDocument(
        dim=2, cells=[[HalfSpaceDocument(normal=["1", "0"], offset="1")]], volume=Fraction(1, 8)
    )
    net = NetCertificateDocument(
        k=1, scale="1/2", centers=[["1/2", "1/2"]], bound=4, volume_bound="4", lambda_used="1/2"
    )

    # Act & Assert
    assert region.model_dump(mode="json")["volume"] == "1/8"
    assert net.model_dump(mode="json")["scale"] == "1/2"
    with pytest.raises(ValidationError):
        NetCertificateDocument(k=-1, scale="1", centers=[], bound=1, volume_bound="1", lambda_used="1/2")


# Test RunConfig
def test_run_config_defaults():
    # Act
    run = RunConfig()

    # Assert
    assert run.tol == Fraction(1, 1024)
    assert run.parallelism == 1
    assert run.seed == 0


def test_run_config_invalid_values():
    """Test that budgets, parallelism and tol must be positive."""
    # Arrange
    invalid = [
        {"tol": "0"},
        {"tol": "-1/2"},
        {"cell_budget": 0},
        {"parallelism": 0},
        {"seed": -1},
    ]

    # Act & Assert
    for data in invalid:
        with pytest.raises(ValidationError):
            RunConfig(**data)
