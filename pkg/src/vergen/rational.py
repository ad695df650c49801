"""Exact rational scalars, points and linear algebra.

All geometry in vergen is carried out over the rationals. Scalars are
``fractions.Fraction`` values and points are tuples of them, so every value
is hashable, immutable and compares exactly.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import isqrt
from typing import TypeAlias

from .errors import DimensionMismatchError, EmptyInputError

Scalar: TypeAlias = Fraction
Point: TypeAlias = tuple[Fraction, ...]
Matrix: TypeAlias = tuple[Point, ...]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_scalar(value: int | str | Fraction) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction."""
    return value if isinstance(value, Fraction) else Fraction(value)


def as_point(values: Iterable[int | str | Fraction]) -> Point:
    """Convert an iterable of scalar-like values to a Point."""
    return tuple(as_scalar(v) for v in values)


def zeros(n: int) -> Point:
    """Return the origin of R^n."""
    return (ZERO,) * n


def unit(n: int, i: int) -> Point:
    """Return the i-th standard basis vector of R^n."""
    return tuple(ONE if j == i else ZERO for j in range(n))


def check_dims(*points: Sequence[Fraction]) -> int:
    """Return the common length of the given points.

    Raises:
        DimensionMismatchError: If the lengths differ
        EmptyInputError: If no points are given
    """
    if not points:
        raise EmptyInputError("at least one point is required")
    n = len(points[0])
    for p in points[1:]:
        if len(p) != n:
            raise DimensionMismatchError(f"expected dimension {n}, got {len(p)}")
    return n


def add(a: Point, b: Point) -> Point:
    """Componentwise a + b."""
    return tuple(x + y for x, y in zip(a, b, strict=True))


def sub(a: Point, b: Point) -> Point:
    """Componentwise a - b."""
    return tuple(x - y for x, y in zip(a, b, strict=True))


def scale(c: Fraction, a: Point) -> Point:
    """c * a."""
    return tuple(c * x for x in a)


def neg(a: Point) -> Point:
    """-a."""
    return tuple(-x for x in a)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Inner product."""
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def norm_sq(a: Point) -> Fraction:
    """Squared Euclidean norm."""
    return dot(a, a)


def distance_sq(a: Point, b: Point) -> Fraction:
    """Squared Euclidean distance."""
    return norm_sq(sub(a, b))


def is_zero(a: Point) -> bool:
    """Whether every entry is zero."""
    return all(x == 0 for x in a)


def lincomb(coefficients: Sequence[Fraction], vectors: Sequence[Point], n: int) -> Point:
    """Return sum(c_i * v_i) in R^n."""
    out = [ZERO] * n
    for c, v in zip(coefficients, vectors, strict=True):
        if c:
            for j in range(n):
                out[j] += c * v[j]
    return tuple(out)


def centroid(points: Sequence[Point]) -> Point:
    """Vertex centroid (average) of a nonempty point list."""
    n = check_dims(*points)
    k = len(points)
    return tuple(sum((p[j] for p in points), ZERO) / k for j in range(n))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Args:
        rows: Matrix rows

    Returns:
        The nonzero rows of the reduced matrix and their pivot columns
    """
    matrix = [[as_scalar(x) for x in r] for r in rows]
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(matrix)) if matrix[i][c] != 0), None)
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inv = ONE / matrix[r][c]
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                matrix[i] = [x - f * y for x, y in zip(matrix[i], matrix[r], strict=True)]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return matrix[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix."""
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], n: int) -> list[Point]:
    """Basis of {x in R^n : row . x = 0 for every row}."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(reduced, pivots, strict=True):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Point | None:
    """Solve a square system exactly; None when it is singular."""
    n = len(matrix)
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs, strict=True)]
    reduced, pivots = rref(augmented)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in reduced)


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [[as_scalar(x) for x in r] for r in matrix]
    n = len(m)
    result = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c], strict=True)]
    return result


def identity(n: int) -> Matrix:
    """Identity matrix of size n."""
    return tuple(unit(n, i) for i in range(n))


def matvec(matrix: Matrix, v: Point) -> Point:
    """Matrix times vector."""
    return tuple(dot(row, v) for row in matrix)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product a b."""
    cols = list(zip(*b, strict=True))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def format_scalar(value: Fraction) -> str:
    """Canonical "p" or "p/q" text for a rational."""
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_point(p: Point) -> list[str]:
    """Canonical strings of the coordinates."""
    return [format_scalar(x) for x in p]


def floor_sqrt(value: Fraction, denominator: int) -> Fraction:
    """Largest k/denominator whose square does not exceed value (value >= 0)."""
    # (k/d)^2 <= p/q  <=>  k^2 <= p d^2 / q
    k = isqrt(value.numerator * denominator * denominator // value.denominator)
    while Fraction(k + 1, denominator) ** 2 <= value:
        k += 1
    while k > 0 and Fraction(k, denominator) ** 2 > value:
        k -= 1
    return Fraction(k, denominator)
