"""The group G = <alpha, beta> acting on positive quintuples.

    alpha(a,b,c,d,e)    = (b, (b^2 + cd)/a, c, d, e)
    alpha^-1(a,b,c,d,e) = ((a^2 + cd)/b, a, c, d, e)
    beta(a,b,c,d,e)     = (b, c, (ac + be)/d, a, e)
    beta^-1(a,b,c,d,e)  = (d, a, b, (ae + bd)/c, e)

Every generator is a composite sigma * mu_k of a cluster mutation and a
relabelling, so the frozen coordinate e never changes and positivity is
preserved.
"""

from fractions import Fraction
from typing import Union

from src.dynamics.models import Quintuple
from src.dynamics.words import GroupWord, Letter, parse_word
from src.exceptions import ValidationException
from src.utils.exact import to_fraction

WordLike = Union[GroupWord, str]


def apply_gen(p: Quintuple, letter: Union[Letter, str]) -> Quintuple:
    """Apply one generator or inverse to a quintuple."""
    a, b, c, d, e = p.as_tuple()
    letter = Letter(letter)
    if letter is Letter.ALPHA:
        return Quintuple(b, (b * b + c * d) / a, c, d, e)
    if letter is Letter.ALPHA_INV:
        return Quintuple((a * a + c * d) / b, a, c, d, e)
    if letter is Letter.BETA:
        return Quintuple(b, c, (a * c + b * e) / d, a, e)
    return Quintuple(d, a, b, (a * e + b * d) / c, e)


def apply_word(p: Quintuple, word: WordLike) -> Quintuple:
    """Apply a word leftmost-first."""
    if isinstance(word, str):
        word = parse_word(word)
    for letter in word:
        p = apply_gen(p, letter)
    return p


def invariant_T(p: Quintuple) -> Fraction:
    """T(P) = [ab(c^2 + d^2 + e^2) + (a^2 + b^2 + cd)(c + d)e] / (abcd) - 9."""
    a, b, c, d, e = p.as_tuple()
    numerator = a * b * (c * c + d * d + e * e) + (a * a + b * b + c * d) * (c + d) * e
    return numerator / (a * b * c * d) - 9


def scale(p: Quintuple, k: Union[int, Fraction, str]) -> Quintuple:
    """Entrywise multiplication by a positive rational k.

    Raises:
        ValidationException: If k <= 0
    """
    factor = to_fraction(k)
    if factor <= 0:
        raise ValidationException("k", f"scale factor must be positive, got {factor}")
    return Quintuple(*(x * factor for x in p))
