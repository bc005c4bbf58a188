"""Exact-number helpers shared by every solver and by the CLI codec.

Numbers travel on the wire as decimal integers or ``p/q`` strings; inside the
package they are ``int`` or ``fractions.Fraction``. Nothing here ever touches
floating point.
"""

import re
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from sympy import Matrix
from sympy import Rational as Rational_

from src.exceptions import ParseException

Rational = Union[int, Fraction]

_INTEGER_RE = re.compile(r"^[+-]?\d+$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def to_fraction(value: Union[int, Fraction, str]) -> Fraction:
    """Coerce an int, Fraction or ``p/q`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseException(str(value), "rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ParseException(repr(value), "rational")


def parse_integer(text: str) -> int:
    """Parse a decimal integer string exactly.

    Raises:
        ParseException: If the text is not a plain decimal integer
    """
    stripped = text.strip()
    if not _INTEGER_RE.match(stripped):
        raise ParseException(text, "integer")
    return int(stripped)


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` into a Fraction.

    Decimal points and exponents are rejected so that the wire format stays
    exact and canonical.

    Raises:
        ParseException: On malformed input or a zero denominator
    """
    stripped = text.strip()
    if not _RATIONAL_RE.match(stripped):
        raise ParseException(text, "rational")
    try:
        return Fraction(stripped)
    except ZeroDivisionError as e:
        raise ParseException(text, "rational", original_exception=e)


def format_rational(value: Rational) -> str:
    """Render an exact number as ``p`` or ``p/q`` (lowest terms)."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_integral(value: Rational) -> bool:
    """Check whether an exact number is an integer."""
    return Fraction(value).denominator == 1


def is_square(n: int) -> bool:
    """Check if n is a perfect square."""
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def exact_sqrt(n: int) -> Optional[int]:
    """Return the integer square root of n when n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def ceil_sqrt(n: int) -> int:
    """Smallest non-negative integer r with r*r >= n."""
    if n <= 0:
        return 0
    r = isqrt(n)
    return r if r * r == n else r + 1


# ============================================================================
# sympy bridge
# ============================================================================


def to_sympy(value: Rational) -> Rational_:
    """Fraction/int -> sympy Rational."""
    q = Fraction(value)
    return Rational_(q.numerator, q.denominator)


def from_sympy(value) -> Fraction:
    """sympy Rational/Integer -> Fraction (raises if the value is not rational)."""
    if isinstance(value, int):
        return Fraction(value)
    if not getattr(value, "is_Rational", False):
        raise ParseException(str(value), "exact rational")
    return Fraction(int(value.p), int(value.q))


def matrix_from_rows(rows) -> Matrix:
    """sympy Matrix with exact Rational entries."""
    return Matrix([[to_sympy(x) for x in row] for row in rows])


def row_vector(values) -> Matrix:
    return Matrix([[to_sympy(x) for x in values]])


def fractions_of(matrix: Matrix):
    """Flatten a sympy row vector back to a tuple of Fractions."""
    return tuple(from_sympy(x) for x in matrix)
