"""Pydantic models for reduced data, step matrices, witnesses and decisions."""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    InstanceOf,
    field_validator,
    model_validator,
)
from sympy import Matrix

from src.dynamics.models import Quintuple
from src.dynamics.words import GroupWord, format_word, parse_word
from src.utils.exact import format_rational, matrix_from_rows


class ReducedData(BaseModel):
    """(C0, C1, C2) with m = C0 C1 C2 - C1^2 - C2^2 and t = m - C0^2 + 2."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    C0: Fraction
    C1: Fraction
    C2: Fraction
    m: Fraction
    t: Fraction

    @model_validator(mode="after")
    def _consistent(self) -> "ReducedData":
        if self.m != self.C0 * self.C1 * self.C2 - self.C1**2 - self.C2**2:
            raise ValueError("m does not match C0 C1 C2 - C1^2 - C2^2")
        if self.t != self.m - self.C0**2 + 2:
            raise ValueError("t does not match m - C0^2 + 2")
        return self

    def to_wire(self) -> Dict[str, str]:
        return {
            name: format_rational(getattr(self, name)) for name in ("C0", "C1", "C2", "m", "t")
        }


class StepMatrix(BaseModel):
    """L_sign with beta^(3 sign)(P) = P * L_sign (row vector on the left)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sign: int
    rows: Tuple[Tuple[Fraction, ...], ...]

    @field_validator("sign")
    @classmethod
    def _sign(cls, value: int) -> int:
        if value not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        return value

    def to_sympy(self) -> Matrix:
        return matrix_from_rows(self.rows)

    def to_wire(self) -> List[List[str]]:
        return [[format_rational(x) for x in row] for row in self.rows]


class Witness(BaseModel):
    """Certificate P = word(beta^(3n)(eps, eps, eps, eps, eps)), word applied leftmost-first."""

    model_config = ConfigDict(frozen=True)

    word: str
    n: int
    epsilon: int

    @field_validator("word")
    @classmethod
    def _wire_word(cls, value: str) -> str:
        return parse_word(value).letters

    @property
    def group_word(self) -> GroupWord:
        return GroupWord(self.word)

    def to_wire(self) -> Dict[str, object]:
        return {"word": format_word(self.group_word), "n": self.n, "epsilon": self.epsilon}


class Decision(BaseModel):
    """Membership verdict for P in G(eps, eps, eps, eps, eps) with per-clause reasons."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    quintuple: InstanceOf[Quintuple]
    epsilon: int
    clauses: Dict[str, bool]
    phi: Tuple[Fraction, Fraction, Fraction]
    T: Fraction
    witness: Optional[Witness] = None

    @property
    def member(self) -> bool:
        return all(self.clauses.values())

    @property
    def failing(self) -> List[str]:
        return [name for name, holds in self.clauses.items() if not holds]

    def to_wire(self) -> Dict[str, object]:
        payload: Dict[str, object] = {
            "quintuple": self.quintuple.to_wire(),
            "epsilon": self.epsilon,
            "member": self.member,
            "clauses": dict(self.clauses),
            "failing": self.failing,
            "phi": [format_rational(x) for x in self.phi],
            "T": format_rational(self.T),
        }
        if self.witness is not None:
            payload["witness"] = self.witness.to_wire()
        return payload


class S344Member(BaseModel):
    """beta^(3n)(eps, ..., eps) together with its index."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    quintuple: InstanceOf[Quintuple]


class ClosureReport(BaseModel):
    """Per-generator integrality of phi and divisibility by eps after one step."""

    epsilon: int
    images: Dict[str, List[str]] = Field(default_factory=dict)
    holds: Dict[str, bool] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.holds) and all(self.holds.values())
