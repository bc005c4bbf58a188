"""Value types for the group action on quintuples.

``Quintuple`` is a frozen dataclass of Fractions rather than a pydantic model:
it is created millions of times by the searches and only needs positivity
checked once on construction.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

from src.exceptions import ValidationException
from src.utils.exact import format_rational, to_fraction

Number = Union[int, Fraction, str]


@dataclass(frozen=True, order=True)
class Quintuple:
    """Exact positive rational state (a, b, c, d, e); e is the frozen coordinate."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e"):
            value = to_fraction(getattr(self, name))
            if value <= 0:
                raise ValidationException(name, f"quintuple entries must be positive, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def of(cls, *values: Number) -> "Quintuple":
        """Build from five ints, Fractions or ``p/q`` strings."""
        if len(values) != 5:
            raise ValidationException("quintuple", f"expected 5 entries, got {len(values)}")
        return cls(*values)  # type: ignore[arg-type]

    @classmethod
    def uniform(cls, epsilon: Number) -> "Quintuple":
        """The initial state (eps, eps, eps, eps, eps)."""
        return cls(epsilon, epsilon, epsilon, epsilon, epsilon)  # type: ignore[arg-type]

    def __iter__(self) -> Iterator[Fraction]:
        return iter((self.a, self.b, self.c, self.d, self.e))

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d, self.e)

    @property
    def max_component(self) -> Fraction:
        return max(self.as_tuple())

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self)

    def divisible_by(self, epsilon: int) -> bool:
        """Check P == 0 (mod eps): every entry is an integer multiple of eps."""
        return all(x.denominator == 1 and x.numerator % epsilon == 0 for x in self)

    def to_wire(self) -> List[str]:
        return [format_rational(x) for x in self]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_wire()) + ")"
