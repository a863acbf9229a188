"""Exact rational scalars, vectors, and matrices.

Every geometric decision in this package is tie-sensitive: facet identity,
extremality of a ray, and dominance between outcome vectors all hinge on
inner products that must be exactly zero, not merely small.  Floating point
would silently merge or split faces, so all quantities are
``fractions.Fraction`` values and every routine below is exact.

Vectors are plain tuples of fractions; matrices are tuples of row vectors.
Tuples keep the values hashable, which the cone code relies on for
deduplicating canonical ray representatives.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

RationalLike = "Fraction | int | str"

_DECIMAL = re.compile(r"[+-]?[0-9]+(\.[0-9]+)?")


class ExactnumError(ValueError):
    """Base class for errors raised by this module."""


class ParseError(ExactnumError):
    """Text does not denote a plain decimal number."""


class DimensionMismatch(ExactnumError):
    """Operands do not have compatible dimensions."""


class ZeroVector(ExactnumError):
    """The zero vector cannot represent a ray."""


class SingularMatrix(ExactnumError):
    """Matrix inversion was attempted on a singular matrix."""


def parse_decimal(text: str) -> Fraction:
    """Parse a decimal literal such as "0.4" or "-1.25" into an exact fraction.

    Only plain decimals are accepted (optional sign, digits, optional
    fractional part).  The result is exact: parse_decimal("0.4") == 2/5,
    never a binary approximation.
    """
    stripped = text.strip()
    if not _DECIMAL.fullmatch(stripped):
        raise ParseError(f"not a decimal number: {text!r}")
    return Fraction(stripped)


def rational(value: Fraction | int | str) -> Fraction:
    """Coerce an int, Fraction, or decimal string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_decimal(value)
    raise ParseError(f"cannot interpret {value!r} as an exact rational")


def vec(values: Iterable[Fraction | int | str]) -> Vec:
    """Build an exact vector from rationals, ints, or decimal strings."""
    return tuple(rational(v) for v in values)


def mat(rows: Iterable[Iterable[Fraction | int | str]]) -> Mat:
    """Build an exact matrix, checking that all rows have equal length."""
    built = tuple(vec(row) for row in rows)
    if built and any(len(row) != len(built[0]) for row in built):
        raise DimensionMismatch("matrix rows have unequal lengths")
    return built


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def is_zero(v: Vec) -> bool:
    return all(x == 0 for x in v)


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_add(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"add of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"sub of lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction | int, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def mat_vec(m: Mat, v: Vec) -> Vec:
    """Matrix-vector product, exact."""
    if m and len(m[0]) != len(v):
        raise DimensionMismatch(f"matrix is {len(m)}x{len(m[0])}, vector has {len(v)}")
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if not a or not b:
        return ()
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = transpose(b)
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def normalize_ray(v: Vec) -> Vec:
    """Scale a ray by a positive rational so its first nonzero entry is +-1.

    The sign of every entry is preserved, so two rays are positive multiples
    of one another exactly when their normal forms are equal.  Raises
    ZeroVector for the zero vector, which names no ray.
    """
    for x in v:
        if x != 0:
            return tuple(entry / abs(x) for entry in v)
    raise ZeroVector("zero vector has no ray representative")


def _eliminate(rows: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduce rows in place over the first `cols` columns; return (rows, pivot cols).

    Produces reduced row echelon form over the leading `cols` columns.  Any
    trailing columns ride along, which is how augmented systems are solved.
    """
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Mat) -> int:
    if not m:
        return 0
    rows = [list(row) for row in m]
    _, pivots = _eliminate(rows, len(m[0]))
    return len(pivots)


def nullspace(m: Mat) -> tuple[Vec, ...]:
    """Basis of the right nullspace of m, () when m has full column rank."""
    if not m:
        return ()
    n = len(m[0])
    rows = [list(row) for row in m]
    reduced, pivots = _eliminate(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis: list[Vec] = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m: Mat, b: Vec) -> Vec | None:
    """One exact solution of m @ x = b, or None when the system is inconsistent."""
    if len(m) != len(b):
        raise DimensionMismatch("right-hand side does not match row count")
    if not m:
        return ()
    n = len(m[0])
    rows = [list(row) + [rhs] for row, rhs in zip(m, b)]
    reduced, pivots = _eliminate(rows, n)
    for r in range(len(pivots), len(reduced)):
        if reduced[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = reduced[r][n]
    return tuple(x)


def invert(m: Mat) -> Mat:
    """Exact inverse of a square matrix; raises SingularMatrix otherwise."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("inverse requires a square matrix")
    rows = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    reduced, pivots = _eliminate(rows, n)
    if len(pivots) != n:
        raise SingularMatrix("matrix is singular")
    return tuple(tuple(reduced[i][n:]) for i in range(n))
