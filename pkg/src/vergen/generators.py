"""Named and seeded random polytopes.

Random coordinates are small rationals: numerators uniform in [-256, 256]
and denominators in 1..16, drawn from ``numpy.random.default_rng`` so a seed
fixes the instance.
"""

import logging
import os
from collections.abc import Callable
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import ParameterRangeError
from .minkowski import Segment, Zonotope
from .polytope import Polytope, convex_hull
from .rational import Point, is_zero, neg, unit, zeros

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

NUMERATOR_BOUND = 2**8
DENOMINATOR_BOUND = 16
MAX_ZONOTOPE_GENERATORS = 6


def simplex(n: int) -> Polytope:
    """conv{0, e_1, ..., e_n}."""
    return convex_hull([zeros(n)] + [unit(n, i) for i in range(n)])


def cube(n: int, lo: int = -1, hi: int = 1) -> Polytope:
    """The box [lo, hi]^n."""
    return convex_hull(tuple(Fraction(c) for c in corner) for corner in product((lo, hi), repeat=n))


def cross(n: int) -> Polytope:
    """conv{±e_i}, the square rotated by 45 degrees when n = 2."""
    return convex_hull([unit(n, i) for i in range(n)] + [neg(unit(n, i)) for i in range(n)])


def random_point(rng: np.random.Generator, n: int) -> Point:
    """Random rational point with bounded numerators and denominators."""
    numerators = rng.integers(-NUMERATOR_BOUND, NUMERATOR_BOUND + 1, size=n)
    denominators = rng.integers(1, DENOMINATOR_BOUND + 1, size=n)
    return tuple(Fraction(int(p), int(q)) for p, q in zip(numerators, denominators, strict=True))


def random_hull(n: int, seed: int, count: int | None = None) -> Polytope:
    """Hull of random rational points, redrawn until it is full-dimensional."""
    rng = np.random.default_rng(seed)
    size = count or n + 3
    if size < n + 1:
        raise ParameterRangeError(f"need at least {n + 1} points for a full-dimensional hull")
    while True:
        P = convex_hull(random_point(rng, n) for _ in range(size))
        if P.is_full_dimensional:
            return P
        logger.debug(f"Redrawing degenerate hull for seed {seed}")


def random_zonotope(n: int, seed: int, generators: int | None = None) -> Zonotope:
    """Zonotope with random center and at most six random nonzero generators."""
    rng = np.random.default_rng(seed)
    count = generators or int(rng.integers(1, MAX_ZONOTOPE_GENERATORS + 1))
    center = random_point(rng, n)
    drawn: list[Point] = []
    while len(drawn) < count:
        g = random_point(rng, n)
        if not is_zero(g):
            drawn.append(g)
    return Zonotope(center, tuple(drawn))


def random_segment(n: int, seed: int) -> Segment:
    """Random nondegenerate segment.

    Args:
        n: Ambient dimension
        seed: Seed of the numpy generator

    Returns:
        A segment with distinct endpoints
    """
    rng = np.random.default_rng(seed)
    a = random_point(rng, n)
    b = random_point(rng, n)
    while a == b:
        b = random_point(rng, n)
    return Segment(a, b)


def _zonotope_shape(n: int, seed: int) -> Polytope:
    return random_zonotope(n, seed).to_polytope()


SHAPES: dict[str, Callable[[int, int], Polytope]] = {
    "simplex": lambda n, seed: simplex(n),
    "cube": lambda n, seed: cube(n),
    "cross": lambda n, seed: cross(n),
    "zonotope": _zonotope_shape,
    "random-hull": random_hull,
}


def generate(shape: str, n: int, seed: int = 0) -> Polytope:
    """Build a named or random instance.

    Raises:
        ParameterRangeError: If the shape is unknown or n < 1
    """
    if n < 1:
        raise ParameterRangeError(f"dimension must be positive, got {n}")
    if shape not in SHAPES:
        raise ParameterRangeError(f"unknown shape {shape!r}; expected one of {sorted(SHAPES)}")
    P = SHAPES[shape](n, seed)
    logger.info(f"Generated {shape} in R^{n} with {len(P.vertices)} vertices")
    return P
