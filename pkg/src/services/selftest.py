"""Self-test suite: every documented identity checked exactly on sampled inputs.

Each property is a small function returning ``(passed, detail)``. Sampling uses
a seeded ``random.Random`` so a run is reproducible; sizes are kept small so
``selftest`` finishes in seconds. The full-size checks live in the test suite.
"""

import random
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from src.cluster.factorisation import verify_generator_factorisation
from src.cluster.mutation import (
    SEED_MATRIX,
    is_skew_symmetrizable,
    mutate_matrix,
    verify_B_invariance,
)
from src.decision.orbit_decision import (
    beta3_power,
    check_cde_relation,
    decide,
    derive_mt,
    reconstruct_from_cde,
    replay,
    s344_index,
    witness,
)
from src.dynamics.group import apply_gen, apply_word, invariant_T, scale
from src.dynamics.linear import linear_gen
from src.dynamics.models import Quintuple
from src.dynamics.orbit import orbit_bfs
from src.dynamics.words import GroupWord, Letter, TildeWord
from src.oracles.brute_force import brute_force_conic_box, brute_force_h_box
from src.reduction.conserved import (
    ROOT_TRIPLE,
    Triple,
    apply_tilde_gen,
    apply_tilde_word,
    phi,
    tilde_T,
)
from src.solvers.markov_like import (
    brute_force_triples,
    descend_to_root,
    enumerate_tree,
)
from src.solvers.models import ConicForm
from src.solvers.pell_conic import (
    enumerate_conic,
    h0_elements,
    h0_via_conic,
    h_value,
    hat_h,
    least_pell4,
    matthews_fundamentals,
    points_within,
    theta,
)
from src.utils.structured_logger import get_structured_logger

slog = get_structured_logger("services.selftest")

Check = Callable[[random.Random], Tuple[bool, str]]


class PropertyResult(BaseModel):
    """Pass/fail of one named property."""

    module: str
    name: str
    passed: bool
    detail: str = ""
    elapsed_ms: float = 0.0


class SelfTestReport(BaseModel):
    results: List[PropertyResult] = Field(default_factory=list)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[PropertyResult]:
        return [result for result in self.results if not result.passed]

    def to_wire(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "seed": self.seed,
            "results": [
                {
                    "module": r.module,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                }
                for r in self.results
            ],
        }


# ============================================================================
# Sampling
# ============================================================================


def random_quintuple(rng: random.Random, max_value: int = 9) -> Quintuple:
    """A positive rational quintuple with small numerators and denominators."""
    return Quintuple(
        *(Fraction(rng.randint(1, max_value), rng.randint(1, max_value)) for _ in range(5))
    )


def random_word(rng: random.Random, max_length: int) -> GroupWord:
    letters = [rng.choice(list(Letter)).value for _ in range(rng.randint(0, max_length))]
    return GroupWord("".join(letters))


# ============================================================================
# exchange_core
# ============================================================================


def _matrix_identities(rng: random.Random) -> Tuple[bool, str]:
    report = verify_B_invariance()
    failed = [check.label for check in report.checks if not check.passed]
    return report.passed, ", ".join(failed)


def _mutation_involution(rng: random.Random) -> Tuple[bool, str]:
    bad = [k for k in range(1, SEED_MATRIX.n + 1) if mutate_matrix(mutate_matrix(SEED_MATRIX, k), k) != SEED_MATRIX]
    return not bad, f"directions {bad}" if bad else ""


def _symmetrizer_preserved(rng: random.Random) -> Tuple[bool, str]:
    base = is_skew_symmetrizable(SEED_MATRIX.principal_part())
    for k in range(1, SEED_MATRIX.n + 1):
        mutated = is_skew_symmetrizable(mutate_matrix(SEED_MATRIX, k).principal_part())
        if base is None or mutated != base:
            return False, f"direction {k}: {mutated} != {base}"
    return True, ""


def _generator_factorisation(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(20):
        p = random_quintuple(rng)
        failed = [check.letter for check in verify_generator_factorisation(p) if not check.passed]
        if failed:
            return False, f"{p}: {failed}"
    return True, ""


# ============================================================================
# quintuple_dynamics
# ============================================================================


def _t_invariance(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        p = random_quintuple(rng)
        word = random_word(rng, 15)
        if invariant_T(apply_word(p, word)) != invariant_T(p):
            return False, f"{p} under {word.letters}"
    return True, ""


def _generator_inverses(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        p = random_quintuple(rng)
        for letter in Letter:
            image = apply_gen(p, letter)
            if image.e != p.e or apply_gen(image, letter.inverse) != p:
                return False, f"{p} under {letter.value}"
    return True, ""


def _integral_orbit(rng: random.Random) -> Tuple[bool, str]:
    for epsilon in (1, 2, 3):
        for _ in range(30):
            image = apply_word(Quintuple.uniform(epsilon), random_word(rng, 12))
            if not (image.is_integral() and image.divisible_by(epsilon)):
                return False, f"{image} at eps={epsilon}"
    return True, ""


def _homogeneity(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(30):
        p = random_quintuple(rng)
        word = random_word(rng, 10)
        k = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        if apply_word(scale(p, k), word) != scale(apply_word(p, word), k):
            return False, f"{p} by {k} under {word.letters}"
    return True, ""


def _linearised_generators(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(30):
        p = random_quintuple(rng)
        for letter in Letter:
            if linear_gen(p, letter) != apply_gen(p, letter):
                return False, f"{p} under {letter.value}"
    return True, ""


# ============================================================================
# conserved_map
# ============================================================================


def _t_factors_through_phi(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        p = random_quintuple(rng)
        if invariant_T(p) != tilde_T(phi(p)):
            return False, str(p)
    return True, ""


def _phi_commutes(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        p = random_quintuple(rng)
        for letter in Letter:
            if phi(apply_gen(p, letter)) != apply_tilde_gen(phi(p), letter):
                return False, f"{p} under {letter.value}"
    return True, ""


def _tilde_invariance(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        t = Triple(*(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)))
        for letter in Letter:
            image = apply_tilde_gen(t, letter)
            if tilde_T(image) != tilde_T(t) or apply_tilde_gen(image, letter.inverse) != t:
                return False, f"{t} under {letter.value}"
        if apply_tilde_word(t, "bbb") != t:
            return False, f"beta~ has order != 3 at {t}"
    return True, ""


# ============================================================================
# markov_like
# ============================================================================


def _tree_matches_oracle(rng: random.Random) -> Tuple[bool, str]:
    bound = 500
    tree, oracle = set(enumerate_tree(bound)), set(brute_force_triples(bound))
    return tree == oracle, f"tree-only {sorted(tree - oracle)}, oracle-only {sorted(oracle - tree)}"


def _descent_replays(rng: random.Random) -> Tuple[bool, str]:
    for triple in enumerate_tree(500):
        for order in ((0, 1, 2), (2, 0, 1), (0, 2, 1)):
            t = Triple(*(triple[i] for i in order))
            word = descend_to_root(t)
            if not isinstance(word, TildeWord) or apply_tilde_word(ROOT_TRIPLE, word) != t:
                return False, f"{t} via {word.letters}"
    return True, ""


# ============================================================================
# pell_conic
# ============================================================================


def _pell_minimal(rng: random.Random) -> Tuple[bool, str]:
    solution = least_pell4(77)
    return (solution.x, solution.y) == (9, 1), f"got ({solution.x}, {solution.y})"


def _conic_matches_oracle(rng: random.Random) -> Tuple[bool, str]:
    bound = 10**4
    for epsilon in (1, 2):
        form = ConicForm(A=1, B=-9, C=1, E=-112 * epsilon * epsilon)
        fundamentals = matthews_fundamentals(form)
        if fundamentals != [(32 * epsilon, 4 * epsilon)]:
            return False, f"fundamentals {fundamentals} at eps={epsilon}"
        generated = points_within(enumerate_conic(form, (-6, 6)), bound)
        if generated != set(brute_force_conic_box(form, bound)):
            return False, f"conic points differ at eps={epsilon}"
    return True, ""


def _h0_identities(rng: random.Random) -> Tuple[bool, str]:
    for epsilon in (1, 2, 3):
        elements = h0_elements(epsilon, (-6, 6))
        for element in elements:
            if h_value(element.x, element.y, epsilon) != 0:
                return False, f"({element.x}, {element.y}) off H at eps={epsilon}"
        previous = None
        for element in sorted(elements, key=lambda el: el.n or 0):
            if previous is not None and (element.x, element.y) != (
                9 * previous[0] - previous[1] - 3 * epsilon,
                previous[0],
            ):
                return False, f"recurrence broken at n={element.n}"
            previous = (element.x, element.y)
        via_conic = {el.point() for el in h0_via_conic(epsilon, (-6, 6))}
        if via_conic != {el.point() for el in elements}:
            return False, f"conic route differs at eps={epsilon}"
        box = 10**4
        oracle = set(brute_force_h_box(epsilon, box))
        if oracle != points_within((el.point() for el in h0_elements(epsilon, (-12, 12))), box):
            return False, f"H box differs at eps={epsilon}"
    return True, ""


def _theta_conjugates(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        epsilon = rng.randint(1, 4)
        x, y = rng.randint(-50, 50), rng.randint(-50, 50)
        if hat_h(theta(x, epsilon), theta(y, epsilon), epsilon) != 49 * h_value(x, y, epsilon):
            return False, f"({x}, {y}) at eps={epsilon}"
    return True, ""


# ============================================================================
# orbit_decision
# ============================================================================


def _reduced_data(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        p = random_quintuple(rng)
        if not check_cde_relation(p):
            return False, f"cde relation fails at {p}"
        if reconstruct_from_cde(p.c, p.d, p.e, phi(p)) != p:
            return False, f"reconstruction fails at {p}"
    return True, ""


def _m_positive(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(50):
        p = random_quintuple(rng)
        data = derive_mt(phi(p))
        if data.m <= 0:
            return False, f"m = {data.m} at {p}"
    return True, ""


def _beta3_matches_words(rng: random.Random) -> Tuple[bool, str]:
    for _ in range(10):
        p = random_quintuple(rng)
        for n in range(-4, 5):
            word = GroupWord(("bbb" if n > 0 else "BBB") * abs(n))
            if beta3_power(p, n) != apply_word(p, word):
                return False, f"{p} at n={n}"
    for epsilon in (1, 2, 3):
        for n in range(-6, 7):
            member = beta3_power(Quintuple.uniform(epsilon), n)
            if phi(member) != ROOT_TRIPLE or s344_index(member, epsilon) != n:
                return False, f"S(3,4,4) index {n} at eps={epsilon}"
    return True, ""


def _witness_replays(rng: random.Random) -> Tuple[bool, str]:
    for epsilon in (1, 2, 3):
        for _ in range(10):
            p = apply_word(Quintuple.uniform(epsilon), random_word(rng, 10))
            certificate = witness(p, epsilon)
            if replay(certificate) != p:
                return False, f"{p} at eps={epsilon}"
    return True, ""


def _orbit_members(rng: random.Random) -> Tuple[bool, str]:
    for epsilon in (1, 2):
        for p in orbit_bfs(epsilon, 300 * epsilon):
            decision = decide(p, epsilon)
            if not decision.member or decision.witness is None or replay(decision.witness) != p:
                return False, f"{p} at eps={epsilon}"
    return True, ""


PROPERTIES: List[Tuple[str, str, Check]] = [
    ("exchange_core", "seed matrix identities", _matrix_identities),
    ("exchange_core", "mutation is an involution", _mutation_involution),
    ("exchange_core", "mutation keeps the skew-symmetrizer", _symmetrizer_preserved),
    ("exchange_core", "generators factor through mutations", _generator_factorisation),
    ("quintuple_dynamics", "T is invariant", _t_invariance),
    ("quintuple_dynamics", "generators invert and fix e", _generator_inverses),
    ("quintuple_dynamics", "orbit stays integral and divisible", _integral_orbit),
    ("quintuple_dynamics", "word action is homogeneous", _homogeneity),
    ("quintuple_dynamics", "linearised generators agree", _linearised_generators),
    ("conserved_map", "T factors through phi", _t_factors_through_phi),
    ("conserved_map", "phi commutes with generators", _phi_commutes),
    ("conserved_map", "tilde generators keep T~", _tilde_invariance),
    ("markov_like", "tree equals brute force", _tree_matches_oracle),
    ("markov_like", "descent words replay", _descent_replays),
    ("pell_conic", "least Pell solution for D=77", _pell_minimal),
    ("pell_conic", "conic orbit equals brute force", _conic_matches_oracle),
    ("pell_conic", "H0 recurrence and oracle", _h0_identities),
    ("pell_conic", "theta conjugates H", _theta_conjugates),
    ("orbit_decision", "cde relation and reconstruction", _reduced_data),
    ("orbit_decision", "m is positive on phi images", _m_positive),
    ("orbit_decision", "beta^3 matrix powers", _beta3_matches_words),
    ("orbit_decision", "witnesses replay", _witness_replays),
    ("orbit_decision", "orbit elements are members", _orbit_members),
]


def run_selftest(seed: int = 0, modules: Optional[List[str]] = None) -> SelfTestReport:
    """Run every registered property, optionally restricted to some modules.

    A property that raises counts as failed with the exception text as detail.
    """
    report = SelfTestReport(seed=seed)
    for module, name, check in PROPERTIES:
        if modules and module not in modules:
            continue
        rng = random.Random(f"{seed}:{module}:{name}")
        started = time.perf_counter()
        try:
            passed, detail = check(rng)
        except Exception as e:
            slog.error("Property raised", module=module, property=name, error=str(e))
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = (time.perf_counter() - started) * 1000
        report.results.append(
            PropertyResult(
                module=module,
                name=name,
                passed=passed,
                detail="" if passed else detail,
                elapsed_ms=round(elapsed, 2),
            )
        )
        slog.debug("Property checked", module=module, property=name, passed=passed)
    slog.info(
        "Self-test finished",
        seed=seed,
        checked=len(report.results),
        failed=len(report.failures),
    )
    return report
