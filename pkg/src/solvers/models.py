"""Pydantic models for the conic and Pell solvers."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class ConicForm(BaseModel):
    """The indefinite form A U^2 + B U V + C V^2 = E.

    Construction only requires integer coefficients; the hypotheses needed by
    the fundamental-solution method (A > 0, E < 0, D > 0 squarefree) are
    checked by the solver so that oracles can use arbitrary forms.
    """

    model_config = ConfigDict(frozen=True)

    A: int
    B: int
    C: int
    E: int

    @property
    def D(self) -> int:
        """Discriminant B^2 - 4AC."""
        return self.B * self.B - 4 * self.A * self.C

    def evaluate(self, u: int, v: int) -> int:
        """Left-hand side A u^2 + B u v + C v^2."""
        return self.A * u * u + self.B * u * v + self.C * v * v

    def satisfied_by(self, u: int, v: int) -> bool:
        return self.evaluate(u, v) == self.E

    def __str__(self) -> str:
        return f"({self.A}, {self.B}, {self.C}, {self.E})"


class PellSolution(BaseModel):
    """Least positive solution of X^2 - D Y^2 = 4."""

    model_config = ConfigDict(frozen=True)

    D: int
    x: int
    y: int

    @model_validator(mode="after")
    def _solves(self) -> "PellSolution":
        if self.x <= 0 or self.y <= 0:
            raise ValueError("Pell solution must be positive")
        if self.x * self.x - self.D * self.y * self.y != 4:
            raise ValueError(f"({self.x}, {self.y}) does not solve X^2 - {self.D} Y^2 = 4")
        return self


class H0Element(BaseModel):
    """A point of H(x, y) = 0 with both coordinates positive multiples of eps.

    Attributes:
        n: Matrix-power index when the element comes from (eps, eps, eps) M^n
    """

    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    epsilon: int
    n: Optional[int] = None

    @field_validator("epsilon")
    @classmethod
    def _positive_epsilon(cls, value: int) -> int:
        if value < 1:
            raise ValueError("epsilon must be a positive integer")
        return value

    @model_validator(mode="after")
    def _on_hyperbola(self) -> "H0Element":
        x, y, eps = self.x, self.y, self.epsilon
        if x <= 0 or y <= 0:
            raise ValueError("H0 elements are positive")
        if x * x - 9 * x * y + y * y + 3 * eps * x + 3 * eps * y + eps * eps != 0:
            raise ValueError(f"({x}, {y}) is not on H for eps={eps}")
        if x % eps or y % eps:
            raise ValueError(f"({x}, {y}) is not a multiple of eps={eps}")
        return self

    def point(self) -> tuple:
        return (self.x, self.y)


class ConicOrbitPoint(BaseModel):
    """One image (u, v) * M^n of a fundamental solution."""

    model_config = ConfigDict(frozen=True)

    fundamental: List[int]
    n: int
    U: int
    V: int
