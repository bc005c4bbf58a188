"""Words over {alpha, alpha^-1, beta, beta^-1} and their wire codec.

On the wire a word is a string over ``a`` (alpha), ``A`` (alpha^-1),
``b`` (beta) and ``B`` (beta^-1) read leftmost-first: the leftmost letter acts
first. Product notation such as ``alpha beta^2`` composes right to left, so
``product_notation`` reverses when translating.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Tuple, Type, TypeVar

from src.exceptions import ParseException

W = TypeVar("W", bound="Word")


class Letter(str, Enum):
    """Generators and their inverses."""

    ALPHA = "a"
    ALPHA_INV = "A"
    BETA = "b"
    BETA_INV = "B"

    @property
    def inverse(self) -> "Letter":
        return Letter(self.value.swapcase())

    @property
    def generator(self) -> str:
        return "alpha" if self.value.lower() == "a" else "beta"

    @property
    def exponent(self) -> int:
        return 1 if self.value.islower() else -1


_ALPHABET = frozenset(letter.value for letter in Letter)


@dataclass(frozen=True)
class Word:
    """Finite sequence of letters, applied leftmost-first."""

    letters: str = ""

    def __post_init__(self):
        bad = set(self.letters) - _ALPHABET
        if bad:
            raise ParseException(self.letters, "word over {a, A, b, B}")

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(ch) for ch in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self: W, other: "Word") -> W:
        return type(self)(self.letters + other.letters)

    def __str__(self) -> str:
        return self.letters

    def inverse(self: W) -> W:
        """Group inverse: reverse and invert every letter."""
        return type(self)(self.letters[::-1].swapcase())

    def free_reduce(self: W) -> W:
        """Cancel adjacent inverse pairs until none remain."""
        stack: List[str] = []
        for ch in self.letters:
            if stack and stack[-1] == ch.swapcase():
                stack.pop()
            else:
                stack.append(ch)
        return type(self)("".join(stack))

    def power(self: W, n: int) -> W:
        """w^n for any integer n (negative powers use the inverse)."""
        base = self if n >= 0 else self.inverse()
        return type(self)(base.letters * abs(n))


class GroupWord(Word):
    """Word acting on quintuples."""


class TildeWord(Word):
    """Word acting on triples through the tilde generators."""


# ============================================================================
# Codec
# ============================================================================


def parse_word(text: str, kind: Type[W] = GroupWord) -> W:  # type: ignore[assignment]
    """Parse the wire form; ``-`` or the empty string denote the identity.

    A leading ``~`` is accepted on tilde words only.
    """
    stripped = text.strip()
    if stripped in ("", "-", "e"):
        return kind("")
    if kind is TildeWord and stripped.startswith("~"):
        stripped = stripped[1:]
    return kind(stripped)


def format_word(word: Word) -> str:
    """Wire form of a word (``-`` for the empty word so CLI output is never blank)."""
    return word.letters or "-"


def invert_word(word: W) -> W:
    return word.inverse()


def free_reduce(word: W) -> W:
    return word.free_reduce()


def _runs(letters: str) -> List[Tuple[str, int]]:
    runs: List[Tuple[str, int]] = []
    for ch in letters:
        gen = ch.lower()
        step = 1 if ch.islower() else -1
        if runs and runs[-1][0] == gen:
            runs[-1] = (gen, runs[-1][1] + step)
            if runs[-1][1] == 0:
                runs.pop()
        else:
            runs.append((gen, step))
    return runs


def product_notation(word: Word) -> str:
    """Product notation, rightmost factor acting first.

    The wire word ``bba`` (beta, beta, then alpha) becomes ``alpha beta^2``.
    """
    names = {"a": "alpha", "b": "beta"}
    parts = []
    for gen, power in _runs(word.letters[::-1]):
        parts.append(names[gen] if power == 1 else f"{names[gen]}^{power}")
    return " ".join(parts) or "id"


_FACTOR_RE = re.compile(r"(alpha|beta)(?:\^(-?\d+))?")


def from_product_notation(text: str, kind: Type[W] = GroupWord) -> W:  # type: ignore[assignment]
    """Inverse of :func:`product_notation`."""
    stripped = text.strip()
    if stripped in ("", "id"):
        return kind("")
    factors = stripped.split()
    pieces = []
    for factor in factors:
        match = _FACTOR_RE.fullmatch(factor)
        if not match:
            raise ParseException(factor, "factor like alpha^n or beta^n")
        letter = "a" if match.group(1) == "alpha" else "b"
        power = int(match.group(2)) if match.group(2) else 1
        pieces.append(letter * power if power >= 0 else letter.upper() * -power)
    return kind("".join(reversed(pieces)))
