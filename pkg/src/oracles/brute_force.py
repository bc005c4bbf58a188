"""Independent exhaustive searches used as ground truth.

Nothing here calls into the solvers; the searches share only the exact
integer helpers. Each search is split into coordinate ranges that can run in
worker processes, and merged output is sorted.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from src.dynamics.models import Quintuple
from src.solvers.models import ConicForm
from src.utils.exact import exact_sqrt
from src.utils.parallel import chunked_range, flatten, parallel_map
from src.utils.structured_logger import get_structured_logger

slog = get_structured_logger("oracles.brute_force")


class SearchBox(BaseModel):
    """Inclusive upper bounds for (a, b, c, d) and the frozen value eps."""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int
    d: int
    epsilon: int = 1

    @model_validator(mode="after")
    def _bounds(self) -> "SearchBox":
        if self.epsilon < 1:
            raise ValueError("epsilon must be a positive integer")
        if min(self.a, self.b, self.c, self.d) < self.epsilon:
            raise ValueError("every bound must be at least epsilon")
        return self

    @classmethod
    def cube(cls, bound: int, epsilon: int = 1) -> "SearchBox":
        return cls(a=bound, b=bound, c=bound, d=bound, epsilon=epsilon)


# ============================================================================
# Quintuples with T = 0
# ============================================================================


def _quintuples_for_a(job: Tuple[int, int, SearchBox]) -> List[Tuple[int, ...]]:
    lo, hi, box = job
    e = box.epsilon
    found = []
    for a in range(lo, hi):
        for b in range(1, box.b + 1):
            for c in range(1, box.c + 1):
                # (ab + ce) d^2 + ((a^2 + b^2) e + c^2 e - 9abc) d + (abc^2 + abe^2 + (a^2 + b^2) ce) = 0
                qa = a * b + c * e
                qb = (a * a + b * b) * e + c * c * e - 9 * a * b * c
                qc = a * b * c * c + a * b * e * e + (a * a + b * b) * c * e
                r = exact_sqrt(qb * qb - 4 * qa * qc)
                if r is None:
                    continue
                for numerator in {-qb - r, -qb + r}:
                    if numerator > 0 and numerator % (2 * qa) == 0:
                        d = numerator // (2 * qa)
                        if d <= box.d:
                            found.append((a, b, c, d, e))
    return found


def brute_force_quintuples(box: SearchBox, workers: Optional[int] = None) -> List[Quintuple]:
    """All integer (a, b, c, d, eps) inside the box with T = 0.

    For each (a, b, c) the equation is a quadratic in d, solved with an exact
    integer square root.
    """
    chunks = [(lo, hi, box) for lo, hi in chunked_range(1, box.a + 1, 8)]
    raw = sorted(set(flatten(parallel_map(_quintuples_for_a, chunks, workers))))
    slog.debug("Quintuple oracle finished", box=box.model_dump(), found=len(raw))
    return [Quintuple(*entries) for entries in raw]


# ============================================================================
# Conic points
# ============================================================================


def _conic_points_for_u(job: Tuple[int, int, ConicForm, int]) -> List[Tuple[int, int]]:
    lo, hi, form, bound = job
    A, B, C, E = form.A, form.B, form.C, form.E
    found = []
    for u in range(lo, hi):
        if C == 0:
            # linear in v: B u v = E - A u^2
            rhs = E - A * u * u
            if B * u == 0:
                if rhs == 0:
                    found.extend((u, v) for v in range(-bound, bound + 1))
                continue
            if rhs % (B * u) == 0:
                candidates = {rhs // (B * u)}
            else:
                continue
        else:
            r = exact_sqrt(form.D * u * u + 4 * C * E)
            if r is None:
                continue
            candidates = set()
            for numerator in (-B * u - r, -B * u + r):
                if numerator % (2 * C) == 0:
                    candidates.add(numerator // (2 * C))
        for v in candidates:
            if abs(v) <= bound and A * u * u + B * u * v + C * v * v == E:
                found.append((u, v))
    return found


def brute_force_conic_box(
    form: ConicForm, bound: int, workers: Optional[int] = None
) -> List[Tuple[int, int]]:
    """All integer (U, V) with |U|, |V| <= bound on the conic, sorted."""
    chunks = [
        (lo, hi, form, bound) for lo, hi in chunked_range(-bound, bound + 1, 4096)
    ]
    return sorted(set(flatten(parallel_map(_conic_points_for_u, chunks, workers))))


# ============================================================================
# Points of H
# ============================================================================


def _h_points_for_x(job: Tuple[int, int, int, int]) -> List[Tuple[int, int]]:
    lo, hi, epsilon, bound = job
    found = []
    for x in range(lo, hi):
        # y^2 + (3 eps - 9x) y + (x^2 + 3 eps x + eps^2) = 0
        p = 3 * epsilon - 9 * x
        q = x * x + 3 * epsilon * x + epsilon * epsilon
        r = exact_sqrt(p * p - 4 * q)
        if r is None:
            continue
        for numerator in {-p - r, -p + r}:
            if numerator > 0 and numerator % 2 == 0 and numerator // 2 <= bound:
                found.append((x, numerator // 2))
    return found


def brute_force_h_box(
    epsilon: int, bound: int, multiples_only: bool = True, workers: Optional[int] = None
) -> List[Tuple[int, int]]:
    """Positive (x, y) with x, y <= bound and H(x, y) = 0.

    Args:
        multiples_only: Keep only points with both coordinates divisible by eps
    """
    chunks = [(lo, hi, epsilon, bound) for lo, hi in chunked_range(1, bound + 1, 4096)]
    points = sorted(set(flatten(parallel_map(_h_points_for_x, chunks, workers))))
    if multiples_only:
        points = [(x, y) for x, y in points if x % epsilon == 0 and y % epsilon == 0]
    return points
