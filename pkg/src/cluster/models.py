"""Pydantic models for extended exchange matrices and seeds.

Rows are indexed by I = {1..m}, columns by the exchangeable set J = {1..n};
rows n+1..m belong to frozen variables. All indices exposed to callers are
1-based to match the usual notation.
"""

from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ExchangeMatrix(BaseModel):
    """An m x n integer matrix whose top n x n block is the principal part.

    Attributes:
        entries: Row-major integer entries, m rows of n columns
    """

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...]

    @field_validator("entries")
    @classmethod
    def _rectangular(cls, value: Tuple[Tuple[int, ...], ...]):
        if not value or not value[0]:
            raise ValueError("exchange matrix must have at least one row and column")
        width = len(value[0])
        if any(len(row) != width for row in value):
            raise ValueError("exchange matrix rows must all have the same length")
        if len(value) < width:
            raise ValueError("extended matrix needs at least as many rows as columns")
        return value

    @classmethod
    def from_rows(cls, rows: List[List[int]]) -> "ExchangeMatrix":
        """Build a matrix from nested lists."""
        return cls(entries=tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def m(self) -> int:
        """Number of rows (all cluster variables)."""
        return len(self.entries)

    @property
    def n(self) -> int:
        """Number of columns (exchangeable variables)."""
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> int:
        """Return b_ij with 1-based indices."""
        return self.entries[i - 1][j - 1]

    def principal_part(self) -> List[List[int]]:
        """Top n x n block B0 as nested lists."""
        return [list(row) for row in self.entries[: self.n]]

    def rows(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def to_wire(self) -> List[List[str]]:
        """Row-major JSON form with decimal integer strings."""
        return [[str(x) for x in row] for row in self.entries]


class Seed(BaseModel):
    """A cluster of positive rationals together with its exchange matrix."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cluster: Tuple[Fraction, ...]
    matrix: ExchangeMatrix

    @field_validator("cluster", mode="before")
    @classmethod
    def _exact_positive(cls, value):
        coerced = tuple(Fraction(x) for x in value)
        if any(x <= 0 for x in coerced):
            raise ValueError("cluster entries must be positive")
        return coerced

    @model_validator(mode="after")
    def _matching_length(self) -> "Seed":
        if len(self.cluster) != self.matrix.m:
            raise ValueError(
                f"cluster has {len(self.cluster)} entries but matrix has {self.matrix.m} rows"
            )
        return self


class IdentityCheck(BaseModel):
    """Outcome of checking one identity sigma * mu_k(B) == B."""

    direction: int
    permutation: Tuple[int, ...]
    passed: bool
    label: str = ""


class InvarianceReport(BaseModel):
    """Per-identity pass/fail for the seed-matrix invariance check."""

    checks: List[IdentityCheck] = Field(default_factory=list)
    skew_symmetrizer: Optional[List[int]] = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(check.passed for check in self.checks)


class GeneratorCheck(BaseModel):
    """Outcome of checking sigma * mu_k == generator on one seed."""

    letter: str
    direction: int
    permutation: Tuple[int, ...]
    passed: bool
