"""Input validators for vergen.

This module contains the string-level checks shared by the JSON document
models and the command line flags: rationals, points, matrices and the
ranges of the numeric parameters.
"""

import logging
import os
import re
from fractions import Fraction
from typing import Optional, Tuple, TypeAlias, TypedDict

from .errors import ParameterRangeError
from .rational import HALF, Matrix, Point

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

# "p" or "p/q" with an optional sign on p; q is checked separately
RATIONAL_REGEX = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")

# Type aliases for improved readability
RationalValidationResult: TypeAlias = Tuple[bool, Optional[Fraction]]
PointValidationResult: TypeAlias = Tuple[bool, Optional[Point]]


class MatrixValidationResult(TypedDict):
    """Result type for matrix validation."""

    is_valid: bool
    matrix: Optional[Matrix]
    error: Optional[str]


def validate_rational(text: object) -> RationalValidationResult:
    """Validate a rational given as an int or a "p" / "p/q" string.

    Non-reduced forms such as "2/4" are accepted and normalized; a
    denominator q <= 0 is rejected.

    Args:
        text: The value to validate

    Returns:
        A tuple containing a boolean indicating if the value is valid,
        and the parsed Fraction if valid, None otherwise
    """
    match text:
        case bool():
            return False, None
        case int() as value:
            return True, Fraction(value)
        case Fraction() as value:
            return True, value
        case str() as raw:
            m = RATIONAL_REGEX.match(raw)
            if not m:
                logger.warning(f"Invalid rational format: {raw!r}")
                return False, None
            numerator = int(m.group(1))
            if m.group(2) is None:
                return True, Fraction(numerator)
            denominator = int(m.group(2))
            if denominator <= 0:
                logger.warning(f"Rational with nonpositive denominator: {raw!r}")
                return False, None
            return True, Fraction(numerator, denominator)
        case _:
            return False, None


def parse_rational(text: object) -> Fraction:
    """Parse a rational or raise ValueError."""
    is_valid, value = validate_rational(text)
    if not is_valid or value is None:
        raise ValueError(f"Invalid rational: {text!r}")
    return value


def validate_point(text: str) -> PointValidationResult:
    """Validate a comma-separated point such as "1/2,0,-3"."""
    parts = [p for p in text.split(",")] if text.strip() else []
    if not parts:
        return False, None
    coords = []
    for part in parts:
        is_valid, value = validate_rational(part)
        if not is_valid or value is None:
            return False, None
        coords.append(value)
    return True, tuple(coords)


def parse_point(text: str) -> Point:
    """Parse comma-separated rationals into a point.

    Args:
        text: Coordinates such as "1/2,-1,0"

    Returns:
        The point

    Raises:
        ValueError: If a coordinate is not a rational
    """
    is_valid, value = validate_point(text)
    if not is_valid or value is None:
        raise ValueError(f"Invalid point: {text!r}")
    return value


def validate_matrix(text: str) -> MatrixValidationResult:
    """Validate a square matrix written row by row as "a,b;c,d".

    Args:
        text: The matrix text

    Returns:
        A validation result containing:
        - is_valid: Boolean indicating if the matrix is valid
        - matrix: The parsed rows if valid, None otherwise
        - error: Error message if validation failed, None otherwise
    """
    rows = []
    for raw_row in text.split(";"):
        is_valid, row = validate_point(raw_row)
        if not is_valid or row is None:
            return {"is_valid": False, "matrix": None, "error": f"Invalid matrix row: {raw_row!r}"}
        rows.append(row)
    if any(len(r) != len(rows) for r in rows):
        return {"is_valid": False, "matrix": None, "error": "Matrix must be square"}
    return {"is_valid": True, "matrix": tuple(rows), "error": None}


def parse_matrix(text: str) -> Matrix:
    """Parse a square matrix written as rows separated by ";".

    Args:
        text: Rows such as "0,-1;1,0"

    Returns:
        The matrix rows

    Raises:
        ValueError: If a row is not rational or the matrix is not square
    """
    result = validate_matrix(text)
    if not result["is_valid"] or result["matrix"] is None:
        raise ValueError(result["error"] or f"Invalid matrix: {text!r}")
    return result["matrix"]


def validate_lambda(value: Fraction) -> Fraction:
    """Check 0 < λ <= 1/2.

    Raises:
        ParameterRangeError: If λ is out of range
    """
    if not 0 < value <= HALF:
        raise ParameterRangeError(f"lambda must satisfy 0 < lambda <= 1/2, got {value}")
    return value


def validate_positive(value: Fraction | int, name: str) -> Fraction | int:
    """Check value > 0.

    Raises:
        ParameterRangeError: If value <= 0
    """
    if value <= 0:
        raise ParameterRangeError(f"{name} must be positive, got {value}")
    return value
