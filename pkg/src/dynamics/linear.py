"""Linear forms of the generators in terms of the conserved quantities.

With (C0, C1, C2) = phi(P):

    alpha(P)    = (b, C0 b - a, c, d, e)
    alpha^-1(P) = (C0 a - b, a, c, d, e)
    beta(P)     = (b, c, a - C0 b + C2 c, a, e)        = P * M(P)
    beta^-1(P)  = (d, a, b, -C0 a + b + C1 d, e)

These forms are what make integrality of phi propagate along the orbit.
"""

from typing import Union

from sympy import Matrix

from src.dynamics.models import Quintuple
from src.dynamics.words import Letter
from src.reduction.conserved import conserved_quantities
from src.utils.exact import fractions_of, matrix_from_rows, row_vector


def linear_gen(p: Quintuple, letter: Union[Letter, str]) -> Quintuple:
    """Generator action written linearly with the conserved quantities."""
    a, b, c, d, e = p.as_tuple()
    c0, c1, c2 = conserved_quantities(p)
    letter = Letter(letter)
    if letter is Letter.ALPHA:
        return Quintuple(b, c0 * b - a, c, d, e)
    if letter is Letter.ALPHA_INV:
        return Quintuple(c0 * a - b, a, c, d, e)
    if letter is Letter.BETA:
        return Quintuple(b, c, a - c0 * b + c2 * c, a, e)
    return Quintuple(d, a, b, -c0 * a + b + c1 * d, e)


def beta_step_matrix(p: Quintuple) -> Matrix:
    """M(P) with beta(P) = P * M(P) (row vector times matrix)."""
    c0, _, c2 = conserved_quantities(p)
    return matrix_from_rows(
        [
            [0, 0, 1, 1, 0],
            [1, 0, -c0, 0, 0],
            [0, 1, c2, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1],
        ]
    )


def apply_beta_matrix(p: Quintuple) -> Quintuple:
    return Quintuple(*fractions_of(row_vector(p.as_tuple()) * beta_step_matrix(p)))
