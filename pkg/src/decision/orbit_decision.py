"""Membership in the orbit G(eps, eps, eps, eps, eps) with replayable witnesses.

A positive integer quintuple P with fifth coordinate eps lies in the orbit
exactly when T(P) = 0, phi(P) is a triple of positive integers and every
entry of P is a multiple of eps. For members, the tilde descent of phi(P)
lifts to a word w carrying an element Q of S(3, 4, 4) to P, and Q is
beta^(3n)(eps, ..., eps) for a unique n located on the H0 recurrence.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from src.config import settings
from src.decision.models import (
    ClosureReport,
    Decision,
    ReducedData,
    S344Member,
    StepMatrix,
    Witness,
)
from src.dynamics.group import apply_gen, apply_word, invariant_T
from src.dynamics.models import Quintuple
from src.dynamics.words import GroupWord, Letter
from src.exceptions import (
    DegenerateReductionException,
    InternalAssertionException,
    PreconditionException,
    SearchExhaustedException,
    ValidationException,
)
from src.reduction.conserved import ROOT_TRIPLE, Triple, lift_word, phi
from src.solvers.markov_like import descend_to_root
from src.solvers.pell_conic import h0_step, h0_step_back
from src.utils.exact import fractions_of, row_vector, to_fraction
from src.utils.parallel import parallel_map
from src.utils.structured_logger import get_structured_logger

slog = get_structured_logger("decision.orbit_decision")

CLAUSE_T = "T_zero"
CLAUSE_PHI = "phi_integral"
CLAUSE_MOD = "divisible_by_epsilon"

# ============================================================================
# Reduced data and reconstruction
# ============================================================================


def derive_mt(t: Triple) -> ReducedData:
    """m = C0 C1 C2 - C1^2 - C2^2 and t = m - C0^2 + 2."""
    c0, c1, c2 = t.as_tuple()
    m = c0 * c1 * c2 - c1 * c1 - c2 * c2
    return ReducedData(C0=c0, C1=c1, C2=c2, m=m, t=m - c0 * c0 + 2)


def cde_residual(p: Quintuple) -> Fraction:
    """c^2 - t cd + d^2 + C0 ce + C0 de + e^2 with (C0, ..) = phi(P)."""
    data = derive_mt(phi(p))
    c, d, e = p.c, p.d, p.e
    return c * c - data.t * c * d + d * d + data.C0 * c * e + data.C0 * d * e + e * e


def check_cde_relation(p: Quintuple) -> bool:
    """The last three coordinates satisfy a quadric fixed by phi(P)."""
    return cde_residual(p) == 0


def reconstruct_from_cde(c, d, e, t: Triple) -> Quintuple:
    """Recover (a, b) from (c, d, e) and the triple phi(P).

    a = (C2 c + (C0 C1 - C2) d + C1 e) / m
    b = ((C0 C2 - C1) c + C1 d + C2 e) / m

    Raises:
        DegenerateReductionException: If m = 0
    """
    data = derive_mt(t)
    if data.m == 0:
        raise DegenerateReductionException(t)
    c, d, e = to_fraction(c), to_fraction(d), to_fraction(e)
    c0, c1, c2, m = data.C0, data.C1, data.C2, data.m
    a = (c2 * c + (c0 * c1 - c2) * d + c1 * e) / m
    b = ((c0 * c2 - c1) * c + c1 * d + c2 * e) / m
    return Quintuple(a, b, c, d, e)


# ============================================================================
# beta^3 as a matrix
# ============================================================================


def step_matrix(t: Triple, sign: int) -> StepMatrix:
    """L_1, L_-1 or the identity L_0 for the triple t = phi(P).

    Rows 1-2 of L_+-1 are zero: beta^(+-3)(P) depends on (c, d, e) only.

    Raises:
        DegenerateReductionException: If m = 0 and sign != 0
        ValidationException: If sign is not -1, 0 or 1
    """
    if sign not in (-1, 0, 1):
        raise ValidationException("sign", "must be -1, 0 or 1")
    if sign == 0:
        identity = tuple(
            tuple(Fraction(int(i == j)) for j in range(5)) for i in range(5)
        )
        return StepMatrix(sign=0, rows=identity)

    data = derive_mt(t)
    c0, c1, c2, m, tt = data.C0, data.C1, data.C2, data.m, data.t
    if m == 0:
        raise DegenerateReductionException(t)

    zero = (Fraction(0),) * 5
    if sign == 1:
        body = [
            (tt * c2 + c0 * c1 - c2, tt * (c0 * c2 - c1) + c1, tt * m, m, 0),
            (-c2, c1 - c0 * c2, -m, 0, 0),
            (c1 - c0 * c2, c2 + c0 * c1 - c0 * c0 * c2, -c0 * m, 0, m),
        ]
    else:
        body = [
            (c2 - c0 * c1, -c1, 0, -m, 0),
            (tt * (c0 * c1 - c2) + c2, tt * c1 + c0 * c2 - c1, m, tt * m, 0),
            (c1 + c0 * c2 - c0 * c0 * c1, c2 - c0 * c1, 0, -c0 * m, m),
        ]
    rows = (zero, zero) + tuple(tuple(Fraction(x) / m for x in row) for row in body)
    return StepMatrix(sign=sign, rows=rows)


def beta3_power(p: Quintuple, n: int) -> Quintuple:
    """beta^(3n)(P) = P * L_sgn(n)^|n|, computed with exact matrix powers."""
    if n == 0:
        return p
    sign = 1 if n > 0 else -1
    matrix = step_matrix(phi(p), sign).to_sympy()
    return Quintuple(*fractions_of(row_vector(p.as_tuple()) * matrix ** abs(n)))


def s344_members(epsilon: int, n_range: Tuple[int, int]) -> List[S344Member]:
    """beta^(3n)(eps, ..., eps) for every n in the inclusive range."""
    n1, n2 = n_range
    root = Quintuple.uniform(epsilon)
    return [S344Member(n=n, quintuple=beta3_power(root, n)) for n in range(n1, n2 + 1)]


def s344_index(p: Quintuple, epsilon: int, max_steps: Optional[int] = None) -> int:
    """The n with P = beta^(3n)(eps, ..., eps).

    (c, d) of beta^(3n)(eps^5) runs through the H0 recurrence, whose
    coordinates grow strictly with |n| on each side. The search alternates
    n = 0, 1, -1, 2, ... and drops a side once its larger coordinate exceeds
    max(c, d) of P.

    Raises:
        PreconditionException: If P is not integral, not divisible by eps,
            has e != eps or phi(P) != (3, 4, 4)
        SearchExhaustedException: If no index matches
    """
    _require_integral_state(p, epsilon, "s344_index")
    if phi(p) != ROOT_TRIPLE:
        raise PreconditionException("s344_index", f"phi(P) = {phi(p)} is not (3, 4, 4)")
    max_steps = max_steps or settings.s344_max_steps

    target = (int(p.c), int(p.d))
    ceiling = max(target)
    root = Quintuple.uniform(epsilon)

    def confirmed(n: int) -> bool:
        if beta3_power(root, n) == p:
            slog.log_search("s344_index", steps=abs(n), n=n)
            return True
        return False

    forward = backward = (epsilon, epsilon)
    if forward == target and confirmed(0):
        return 0

    forward_open = backward_open = True
    step = 0
    while (forward_open or backward_open) and step < max_steps:
        step += 1
        if forward_open:
            forward = h0_step(forward, epsilon)
            if max(forward) > ceiling:
                forward_open = False
            elif forward == target and confirmed(step):
                return step
        if backward_open:
            backward = h0_step_back(backward, epsilon)
            if max(backward) > ceiling:
                backward_open = False
            elif backward == target and confirmed(-step):
                return -step

    slog.log_search("s344_index", steps=step, found=False, quintuple=str(p))
    raise SearchExhaustedException("s344_index", f"no beta^3 index reaches {p}")


# ============================================================================
# Criterion and witness
# ============================================================================


def _require_integral_state(p: Quintuple, epsilon: int, operation: str) -> None:
    if epsilon < 1:
        raise PreconditionException(operation, "epsilon must be a positive integer")
    if not p.is_integral():
        raise PreconditionException(operation, f"{p} is not a vector of positive integers")
    if p.e != epsilon:
        raise PreconditionException(operation, f"fifth coordinate {p.e} differs from epsilon={epsilon}")
    if not p.divisible_by(epsilon):
        raise PreconditionException(operation, f"{p} is not divisible by epsilon={epsilon}")


def criterion(p: Quintuple, epsilon: int) -> Decision:
    """Evaluate the three membership clauses.

    Raises:
        PreconditionException: If P is not integral or e != eps
    """
    if epsilon < 1:
        raise PreconditionException("criterion", "epsilon must be a positive integer")
    if not p.is_integral():
        raise PreconditionException("criterion", f"{p} is not a vector of positive integers")
    if p.e != epsilon:
        raise PreconditionException(
            "criterion", f"fifth coordinate {p.e} differs from epsilon={epsilon}"
        )

    t_value = invariant_T(p)
    image = phi(p)
    clauses = {
        CLAUSE_T: t_value == 0,
        CLAUSE_PHI: image.is_positive_integral(),
        CLAUSE_MOD: p.divisible_by(epsilon),
    }
    return Decision(
        quintuple=p, epsilon=epsilon, clauses=clauses, phi=image.as_tuple(), T=t_value
    )


def replay(witness: Witness) -> Quintuple:
    """apply_word(beta^(3n)(eps, ..., eps), word)."""
    start = beta3_power(Quintuple.uniform(witness.epsilon), witness.n)
    return apply_word(start, witness.group_word)


def witness(p: Quintuple, epsilon: int) -> Witness:
    """A replayable certificate (w, n) with P = w(beta^(3n)(eps, ..., eps)).

    Raises:
        PreconditionException: If P is not a member
        InternalAssertionException: If an intermediate invariant fails
    """
    decision = criterion(p, epsilon)
    if not decision.member:
        raise PreconditionException(
            "witness", f"{p} is not a member: failing {', '.join(decision.failing)}"
        )

    tilde_word = descend_to_root(phi(p))
    word = lift_word(tilde_word)
    q = apply_word(p, word.inverse())
    if phi(q) != ROOT_TRIPLE:
        raise InternalAssertionException("witness", f"phi({q}) = {phi(q)} after inverse word")
    if not q.divisible_by(epsilon):
        raise InternalAssertionException("witness", f"{q} lost divisibility by {epsilon}")

    n = s344_index(q, epsilon)
    certificate = Witness(word=word.free_reduce().letters, n=n, epsilon=epsilon)
    if replay(certificate) != p:
        raise InternalAssertionException("witness", f"replay of {certificate} does not give {p}")
    return certificate


def decide(p: Quintuple, epsilon: int, with_witness: bool = True) -> Decision:
    """Criterion plus, for members, a witness."""
    decision = criterion(p, epsilon)
    if decision.member and with_witness:
        decision = decision.model_copy(update={"witness": witness(p, epsilon)})
    return decision


def _decide_job(job: Tuple[Quintuple, int, bool]) -> Decision:
    p, epsilon, with_witness = job
    return decide(p, epsilon, with_witness)


def decide_many(
    quintuples: Sequence[Quintuple],
    epsilon: int,
    with_witness: bool = True,
    workers: Optional[int] = None,
) -> List[Decision]:
    """Decide a batch, optionally across worker processes; order follows the input."""
    jobs = [(p, epsilon, with_witness) for p in quintuples]
    return parallel_map(_decide_job, jobs, workers)


def check_gp_closure(p: Quintuple, epsilon: int) -> ClosureReport:
    """For a member P, each alpha^+-1(P), beta^+-1(P) keeps integral phi and divisibility by eps."""
    decision = criterion(p, epsilon)
    if not decision.member:
        raise PreconditionException("check_gp_closure", f"{p} is not a member")
    report = ClosureReport(epsilon=epsilon)
    for letter in Letter:
        image = apply_gen(p, letter)
        report.images[letter.value] = image.to_wire()
        report.holds[letter.value] = phi(image).is_positive_integral() and image.divisible_by(epsilon)
    return report


def parse_witness(word: Union[str, GroupWord], n: int, epsilon: int) -> Witness:
    text = word.letters if isinstance(word, GroupWord) else word
    return Witness(word=text, n=n, epsilon=epsilon)
