"""Shared fixtures for the vergen test suite."""

import os
from fractions import Fraction
from unittest import mock

import pytest

from src.vergen.config import config
from src.vergen.polytope import Polytope, convex_hull


# Mock environment variables
@pytest.fixture(autouse=True)
def mock_env_vars():
    """Run every test with default settings and a fresh config cache."""
    with mock.patch.dict(
        os.environ,
        {
            "LOG_LEVEL": "INFO",
            "VERGEN_THREADS": "1",
            "VERGEN_SEED": "0",
        },
    ):
        config.reset()
        yield
    config.reset()


@pytest.fixture
def square() -> Polytope:
    """The square [-1, 1]^2."""
    return convex_hull([(-1, -1), (-1, 1), (1, -1), (1, 1)])


@pytest.fixture
def unit_square() -> Polytope:
    """The square [0, 1]^2."""
    return convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def triangle() -> Polytope:
    """conv{0, e1, e2}."""
    return convex_hull([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def hexagon() -> Polytope:
    """A centrally symmetric hexagon, hence a zonotope with three generators."""
    return convex_hull([(2, 1), (1, 2), (-1, 1), (-2, -1), (-1, -2), (1, -1)])


@pytest.fixture
def half() -> Fraction:
    return Fraction(1, 2)
