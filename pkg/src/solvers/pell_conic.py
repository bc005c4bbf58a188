"""Integer points on indefinite conics and the hyperbola H behind S(3, 4, 4).

All integer solutions of A U^2 + B U V + C V^2 = E (A > 0, E < 0, D squarefree)
are the images of finitely many positive fundamental solutions under powers
of the automorphism

    [[(x - B y)/2, A y], [-C y, (x + B y)/2]]

built from the least positive solution (x, y) of X^2 - D Y^2 = 4. The
hyperbola H(x, y) = x^2 - 9xy + y^2 + 3 eps x + 3 eps y + eps^2 is carried to
U^2 - 9UV + V^2 = -112 eps^2 by theta(x) = 7x - 3 eps.
"""

from fractions import Fraction
from math import isqrt
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from sympy import Matrix, factorint

from src.exceptions import (
    ConicFormException,
    InternalAssertionException,
    NonSquarefreeDiscriminantException,
    PellDomainException,
    ValidationException,
)
from src.solvers.models import ConicForm, ConicOrbitPoint, H0Element, PellSolution
from src.utils.exact import ceil_sqrt, exact_sqrt, from_sympy, is_square, row_vector
from src.utils.structured_logger import get_structured_logger

slog = get_structured_logger("solvers.pell_conic")

Point = Tuple[int, int]

# Smallest D for which every solution of X^2 - D Y^2 = 4 with gcd 1 is a
# convergent of sqrt(D) (|X^2 - D Y^2| = 4 < sqrt(D))
CF_MIN_D = 17

# Largest y for which the cross-check also runs the y-search
CROSS_CHECK_MAX_Y = 10**5

# Step matrix of the H0 recurrence on row vectors (x, y, eps)
H0_STEP = Matrix([[9, 1, 0], [-1, 0, 0], [-3, 0, 1]])


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(exponent == 1 for exponent in factorint(abs(n)).values())


# ============================================================================
# Pell's equation X^2 - D Y^2 = 4
# ============================================================================


def _check_pell_domain(D: int) -> None:
    if D <= 0:
        raise PellDomainException(D, "D must be positive")
    if is_square(D):
        raise PellDomainException(D, "D is a perfect square")


def _least_pell4_search(D: int) -> Point:
    y = 1
    while True:
        x = exact_sqrt(4 + D * y * y)
        if x is not None:
            return x, y
        y += 1


def least_pell4_cf(D: int) -> Point:
    """Least positive solution from the continued fraction of sqrt(D).

    Scans convergents p/q up to the first one with p^2 - D q^2 = 1; the answer
    is the smallest-y candidate among convergents of norm 4 and twice that
    norm-1 convergent. Only valid for D >= 17.
    """
    _check_pell_domain(D)
    if D < CF_MIN_D:
        raise PellDomainException(D, f"continued fractions need D >= {CF_MIN_D}")

    a0 = isqrt(D)
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    candidates: List[Point] = []
    while True:
        norm = p * p - D * q * q
        if norm == 4:
            candidates.append((p, q))
        elif norm == 1:
            candidates.append((2 * p, 2 * q))
            break
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return min(candidates, key=lambda point: point[1])


def least_pell4(D: int, search: bool = False, cross_check: bool = False) -> PellSolution:
    """Least positive (x, y) with x^2 - D y^2 = 4.

    Continued fractions are used for D >= 17 and the ascending y-search below
    that. The search length is the answer's y, which for some D in the
    hundreds already exceeds 10^11.

    Args:
        D: Positive non-square integer
        search: Force the ascending y-search whatever D is
        cross_check: Also run the search when the answer has y <= CROSS_CHECK_MAX_Y
            and require agreement

    Raises:
        PellDomainException: If D <= 0 or D is a perfect square
        InternalAssertionException: If the cross-check disagrees
    """
    _check_pell_domain(D)
    if search or D < CF_MIN_D:
        x, y = _least_pell4_search(D)
    else:
        x, y = least_pell4_cf(D)
        if cross_check and y <= CROSS_CHECK_MAX_Y and (x, y) != _least_pell4_search(D):
            raise InternalAssertionException("least_pell4", f"methods disagree for D={D}")
    return PellSolution(D=D, x=x, y=y)


# ============================================================================
# Fundamental solutions
# ============================================================================


def require_fundamental_hypotheses(form: ConicForm) -> None:
    """Raise unless A > 0, E < 0 and D > 0 is squarefree."""
    if form.A <= 0:
        raise ConicFormException(form, "A must be positive")
    if form.E >= 0:
        raise ConicFormException(form, "E must be negative")
    if form.D <= 0:
        raise ConicFormException(form, "D = B^2 - 4AC must be positive")
    if not is_squarefree(form.D):
        raise NonSquarefreeDiscriminantException(form, form.D)


def _positive_u_roots(form: ConicForm, v: int) -> List[int]:
    """Positive integers u with A u^2 + B v u + (C v^2 - E) = 0."""
    disc = form.D * v * v + 4 * form.A * form.E
    r = exact_sqrt(disc)
    if r is None:
        return []
    roots = []
    for numerator in {-form.B * v - r, -form.B * v + r}:
        if numerator > 0 and numerator % (2 * form.A) == 0:
            roots.append(numerator // (2 * form.A))
    return roots


def matthews_fundamentals(form: ConicForm, pell: Optional[PellSolution] = None) -> List[Point]:
    """Positive fundamental solutions (u, v) of the form.

    Condition (i): sqrt(4A|E|/D) <= v < sqrt(A|E|(x + 2)/D), decided as
    D v^2 >= 4A|E| and D v^2 < A|E|(x + 2). Condition (ii): v^2 = A|E|(x+2)/D
    and u = (x - 2 - B y) s / (2A(x - 2)) with s^2 = A|E|(x - 2), every piece
    required to be an exact integer.

    Raises:
        ConicFormException: If the form violates A > 0, E < 0, D > 0
        NonSquarefreeDiscriminantException: If D is not squarefree
    """
    require_fundamental_hypotheses(form)
    pell = pell or least_pell4(form.D)
    x, y = pell.x, pell.y
    A, B, D = form.A, form.B, form.D
    AE = A * abs(form.E)

    found: Set[Point] = set()

    # (i)
    lower = 4 * AE
    upper = AE * (x + 2)
    v = max(1, ceil_sqrt(-(-lower // D)))
    while D * v * v < upper:
        if D * v * v >= lower:
            for u in _positive_u_roots(form, v):
                found.add((u, v))
        v += 1

    # (ii)
    if upper % D == 0 and x > 2:
        v2 = exact_sqrt(upper // D)
        s = exact_sqrt(AE * (x - 2))
        if v2 and s is not None:
            numerator = (x - 2 - B * y) * s
            denominator = 2 * A * (x - 2)
            if numerator > 0 and numerator % denominator == 0:
                found.add((numerator // denominator, v2))

    fundamentals = sorted(point for point in found if form.satisfied_by(*point))
    slog.debug("Fundamental solutions computed", form=str(form), pell=(x, y), fundamentals=fundamentals)
    return fundamentals


def automorphism_matrix(form: ConicForm, pell: PellSolution) -> Matrix:
    """[[ (x - B y)/2, A y ], [ -C y, (x + B y)/2 ]]; determinant 1, preserves the form."""
    x, y = pell.x, pell.y
    return Matrix(
        [
            [(x - form.B * y) // 2, form.A * y],
            [-form.C * y, (x + form.B * y) // 2],
        ]
    )


def _int_row(vector: Matrix) -> Tuple[int, ...]:
    values = [from_sympy(entry) for entry in vector]
    if any(value.denominator != 1 for value in values):
        raise InternalAssertionException("matrix power", f"non-integral image {values}")
    return tuple(int(value) for value in values)


def conic_orbit(
    form: ConicForm,
    n_range: Tuple[int, int],
    fundamentals: Optional[Sequence[Point]] = None,
) -> List[ConicOrbitPoint]:
    """Every (u, v) * M^n for n in the inclusive range, tagged with its origin."""
    require_fundamental_hypotheses(form)
    n1, n2 = n_range
    if n1 > n2:
        raise ValidationException("n_range", f"empty range [{n1}, {n2}]")
    pell = least_pell4(form.D)
    if fundamentals is None:
        fundamentals = matthews_fundamentals(form, pell)
    generator = automorphism_matrix(form, pell)

    points = []
    for u, v in fundamentals:
        for n in range(n1, n2 + 1):
            U, V = _int_row(row_vector((u, v)) * generator**n)
            if not form.satisfied_by(U, V):
                raise InternalAssertionException(
                    "enumerate_conic", f"({U}, {V}) from ({u}, {v}) at n={n} is off the conic"
                )
            points.append(ConicOrbitPoint(fundamental=[u, v], n=n, U=U, V=V))
    return points


def enumerate_conic(
    form: ConicForm, n_range: Tuple[int, int], include_opposite: bool = True
) -> List[Point]:
    """Integer points generated from the fundamentals for n in the range.

    The automorphism keeps orbits of positive fundamentals in one quadrant
    pair, so ``include_opposite`` adds (-U, -V) to cover the sign class the
    matrix powers never reach. Output is deduplicated and sorted.
    """
    points: Set[Point] = set()
    for item in conic_orbit(form, n_range):
        points.add((item.U, item.V))
        if include_opposite:
            points.add((-item.U, -item.V))
    return sorted(points)


# ============================================================================
# theta, H and H-hat
# ============================================================================


def theta(x: int, epsilon: int) -> int:
    """theta(x) = 7x - 3 eps."""
    return 7 * x - 3 * epsilon


def theta_inv(x, epsilon: int) -> Fraction:
    """theta^-1(x) = (x + 3 eps) / 7, exact; integrality is the caller's concern."""
    return (Fraction(x) + 3 * epsilon) / 7


def h_value(x, y, epsilon: int):
    """H(x, y) = x^2 - 9xy + y^2 + 3 eps x + 3 eps y + eps^2."""
    return x * x - 9 * x * y + y * y + 3 * epsilon * x + 3 * epsilon * y + epsilon * epsilon


def hat_h(U, V, epsilon: int):
    """H-hat(U, V) = U^2 - 9UV + V^2 + 112 eps^2, so H-hat(theta x, theta y) = 49 H(x, y)."""
    return U * U - 9 * U * V + V * V + 112 * epsilon * epsilon


def hat_h_form(epsilon: int) -> ConicForm:
    """H-hat = 0 as a conic form: (A, B, C, E) = (1, -9, 1, -112 eps^2)."""
    return ConicForm(A=1, B=-9, C=1, E=-112 * epsilon * epsilon)


def h0_elements(epsilon: int, n_range: Tuple[int, int]) -> List[H0Element]:
    """(x, y) read off (eps, eps, eps) M^n for every n in the inclusive range."""
    if epsilon < 1:
        raise ValidationException("epsilon", "must be a positive integer")
    n1, n2 = n_range
    if n1 > n2:
        raise ValidationException("n_range", f"empty range [{n1}, {n2}]")
    start = row_vector((epsilon, epsilon, epsilon))
    elements = []
    for n in range(n1, n2 + 1):
        x, y, _ = _int_row(start * H0_STEP**n)
        elements.append(H0Element(x=x, y=y, epsilon=epsilon, n=n))
    return elements


def h0_step(point: Point, epsilon: int) -> Point:
    """(x, y) -> (9x - y - 3 eps, x)."""
    x, y = point
    return 9 * x - y - 3 * epsilon, x


def h0_step_back(point: Point, epsilon: int) -> Point:
    """Inverse of :func:`h0_step`: (x, y) -> (y, 9y - x - 3 eps)."""
    x, y = point
    return y, 9 * y - x - 3 * epsilon


def h0_via_conic(epsilon: int, n_range: Tuple[int, int]) -> List[H0Element]:
    """H0 derived from H-hat: conic points congruent to 4 eps mod 7 eps, pulled back by theta.

    theta^-1(32 eps, 4 eps) = (5 eps, eps) is the n = 1 element, so conic
    indices are shifted down by one to cover the same window as
    :func:`h0_elements`. Returned without indices, sorted by (x, y).
    """
    n1, n2 = n_range
    form = hat_h_form(epsilon)
    modulus = 7 * epsilon
    out: Set[Point] = set()
    for item in conic_orbit(form, (n1 - 1, n2 - 1)):
        U, V = item.U, item.V
        if U % modulus != 4 * epsilon or V % modulus != 4 * epsilon:
            continue
        x, y = theta_inv(U, epsilon), theta_inv(V, epsilon)
        if x > 0 and y > 0:
            out.add((int(x), int(y)))
    return [H0Element(x=x, y=y, epsilon=epsilon) for x, y in sorted(out)]


def points_within(points: Iterable[Point], bound: int) -> Set[Point]:
    return {(u, v) for u, v in points if abs(u) <= bound and abs(v) <= bound}
