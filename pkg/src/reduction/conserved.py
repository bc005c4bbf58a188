"""Conserved quantities C0, C1, C2, the map phi and the tilde group on triples.

phi(P) = (C0(P), C1(P), C2(P)) intertwines the action on quintuples with the
much simpler action on triples:

    alpha~(x, y, z)    = (x, z, xz - y)
    alpha~^-1(x, y, z) = (x, xy - z, y)
    beta~(x, y, z)     = (y, z, x)
    beta~^-1(x, y, z)  = (z, x, y)

and T(P) = T~(phi(P)) with T~(x, y, z) = xyz - x^2 - y^2 - z^2 - 7.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

from src.dynamics.models import Quintuple
from src.dynamics.words import GroupWord, Letter, TildeWord, parse_word
from src.utils.exact import format_rational, to_fraction


@dataclass(frozen=True, order=True)
class Triple:
    """Exact rational triple; positivity is only asserted by the solvers."""

    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))

    @classmethod
    def of(cls, x, y, z) -> "Triple":
        return cls(x, y, z)

    def __iter__(self) -> Iterator[Fraction]:
        return iter((self.x, self.y, self.z))

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def sorted(self) -> "Triple":
        return Triple(*sorted(self.as_tuple()))

    def is_positive_integral(self) -> bool:
        return all(v.denominator == 1 and v > 0 for v in self)

    def as_ints(self) -> Tuple[int, int, int]:
        return (int(self.x), int(self.y), int(self.z))

    def to_wire(self) -> List[str]:
        return [format_rational(v) for v in self]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_wire()) + ")"


ROOT_TRIPLE = Triple(3, 4, 4)


# ============================================================================
# phi and the invariants
# ============================================================================


def conserved_quantities(p: Quintuple) -> Tuple[Fraction, Fraction, Fraction]:
    """(C0, C1, C2) of a positive quintuple."""
    a, b, c, d, e = p.as_tuple()
    shared = a * a * c + b * b * d + a * b * e
    c0 = (a * a + b * b + c * d) / (a * b)
    c1 = (c * c * d + shared) / (b * c * d)
    c2 = (c * d * d + shared) / (a * c * d)
    return c0, c1, c2


def phi(p: Quintuple) -> Triple:
    """phi(a,b,c,d,e) = (C0, C1, C2)."""
    return Triple(*conserved_quantities(p))


def tilde_T(t: Triple) -> Fraction:
    """T~(x, y, z) = xyz - x^2 - y^2 - z^2 - 7."""
    x, y, z = t.as_tuple()
    return x * y * z - x * x - y * y - z * z - 7


def is_integral_triple(t: Triple) -> bool:
    return all(v.denominator == 1 for v in t)


# ============================================================================
# Tilde group
# ============================================================================


def apply_tilde_gen(t: Triple, letter: Union[Letter, str]) -> Triple:
    """Apply alpha~, alpha~^-1, beta~ or beta~^-1."""
    x, y, z = t.as_tuple()
    letter = Letter(letter)
    if letter is Letter.ALPHA:
        return Triple(x, z, x * z - y)
    if letter is Letter.ALPHA_INV:
        return Triple(x, x * y - z, y)
    if letter is Letter.BETA:
        return Triple(y, z, x)
    return Triple(z, x, y)


def apply_tilde_word(t: Triple, word: Union[TildeWord, str]) -> Triple:
    """Apply a tilde word leftmost-first."""
    if isinstance(word, str):
        word = parse_word(word, TildeWord)
    for letter in word:
        t = apply_tilde_gen(t, letter)
    return t


def swap_last(t: Triple) -> Triple:
    """The transposition sigma(x, y, z) = (x, z, y); sigma g~ = g~^-1 sigma for each generator."""
    return Triple(t.x, t.z, t.y)


def lift_word(word: TildeWord) -> GroupWord:
    """alpha~ -> alpha, beta~ -> beta, letter by letter."""
    return GroupWord(word.letters)


def project_word(word: GroupWord) -> TildeWord:
    """alpha -> alpha~, beta -> beta~, letter by letter."""
    return TildeWord(word.letters)
