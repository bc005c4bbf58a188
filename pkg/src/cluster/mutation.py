"""Matrix mutation, permutation action and seed mutation.

Implements the Fomin-Zelevinsky rules for extended skew-symmetrizable
matrices together with the exchange relation on clusters, plus the
invariance check of the five-variable seed under sigma * mu_k.
"""

import re
from collections import deque
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from src.cluster.models import ExchangeMatrix, IdentityCheck, InvarianceReport, Seed
from src.exceptions import (
    IndexOutOfRangeException,
    InvalidPermutationException,
    ValidationException,
)
from src.utils.logger import log

# ============================================================================
# Seed data
# ============================================================================

# Extended exchange matrix of the five-variable seed (x5 frozen)
SEED_MATRIX = ExchangeMatrix.from_rows(
    [
        [0, -2, 1, 1],
        [2, 0, -1, -1],
        [-1, 1, 0, 1],
        [-1, 1, -1, 0],
        [0, 0, 1, -1],
    ]
)

Permutation = Tuple[int, ...]


def permutation_from_cycles(cycles: str, size: int) -> Permutation:
    """Parse cycle notation such as "(1234)" or "(12)(34)" into image form.

    The returned tuple ``p`` satisfies ``p[i - 1] == sigma(i)``; in a cycle
    (i1 i2 ... ir) each entry maps to the next one. Single-digit labels may be
    written without separators, otherwise use spaces or commas.

    Raises:
        InvalidPermutationException: On malformed text or repeated labels
    """
    image = list(range(1, size + 1))
    seen: set = set()
    for body in re.findall(r"\(([^()]*)\)", cycles):
        tokens = re.split(r"[\s,]+", body.strip()) if re.search(r"[\s,]", body) else list(body)
        labels = [int(token) for token in tokens if token]
        for label in labels:
            if not 1 <= label <= size or label in seen:
                raise InvalidPermutationException(cycles, f"bad or repeated label {label}")
            seen.add(label)
        for position, label in enumerate(labels):
            image[label - 1] = labels[(position + 1) % len(labels)]
    if re.sub(r"\([^()]*\)", "", cycles).strip():
        raise InvalidPermutationException(cycles, "expected cycle notation")
    return tuple(image)


def invert_permutation(sigma: Permutation) -> Permutation:
    inverse = [0] * len(sigma)
    for i, image in enumerate(sigma, start=1):
        inverse[image - 1] = i
    return tuple(inverse)


def _check_permutation(sigma: Sequence[int], m: int, n: int) -> Permutation:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, m + 1)):
        raise InvalidPermutationException(sigma, f"not a permutation of 1..{m}")
    for frozen in range(n + 1, m + 1):
        if sigma[frozen - 1] <= n:
            raise InvalidPermutationException(
                sigma, f"moves frozen index {frozen} into the exchangeable set"
            )
    return sigma


# ============================================================================
# Matrix operations
# ============================================================================


def mutate_matrix(matrix: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Mutate an extended exchange matrix in direction k (1-based).

    b'_ij = -b_ij if i = k or j = k, otherwise
    b'_ij = b_ij + (b_ik |b_kj| + |b_ik| b_kj) / 2.

    Raises:
        IndexOutOfRangeException: If k is not in 1..n
    """
    n = matrix.n
    if not 1 <= k <= n:
        raise IndexOutOfRangeException(k, n)

    b = matrix.entries
    kk = k - 1
    mutated = []
    for i, row in enumerate(b):
        new_row = []
        for j, value in enumerate(row):
            if i == kk or j == kk:
                new_row.append(-value)
            else:
                b_ik, b_kj = b[i][kk], b[kk][j]
                # the bracket is 0 or +-2|b_ik b_kj|, so halving is exact
                new_row.append(value + (b_ik * abs(b_kj) + abs(b_ik) * b_kj) // 2)
        mutated.append(tuple(new_row))
    return ExchangeMatrix(entries=tuple(mutated))


def apply_permutation(matrix: ExchangeMatrix, sigma: Sequence[int]) -> ExchangeMatrix:
    """Relabel a matrix by sigma: b'_ij = b_{sigma^-1(i), sigma^-1(j)}.

    Args:
        matrix: Extended exchange matrix
        sigma: Image tuple of a permutation of 1..m preserving the frozen rows

    Raises:
        InvalidPermutationException: If sigma is malformed or mixes frozen and
            exchangeable indices
    """
    sigma = _check_permutation(sigma, matrix.m, matrix.n)
    inverse = invert_permutation(sigma)
    rows = [
        tuple(matrix.entry(inverse[i], inverse[j]) for j in range(matrix.n))
        for i in range(matrix.m)
    ]
    return ExchangeMatrix(entries=tuple(rows))


def is_skew_symmetrizable(principal: Sequence[Sequence[int]]) -> Optional[List[int]]:
    """Find a positive integer diagonal D with D * B0 skew-symmetric.

    Sign pattern is checked first (b_ij and b_ji zero together or of opposite
    sign), then the ratios d_j / d_i = -b_ij / b_ji are propagated over each
    connected component of the comparability graph. Each component is scaled
    to coprime positive integers.

    Returns:
        The diagonal of D, or None if no skew-symmetrizer exists
    """
    size = len(principal)
    if any(len(row) != size for row in principal):
        raise ValidationException("principal part", "matrix must be square")

    for i in range(size):
        if principal[i][i] != 0:
            return None
        for j in range(i + 1, size):
            b_ij, b_ji = principal[i][j], principal[j][i]
            if (b_ij == 0) != (b_ji == 0) or b_ij * b_ji > 0:
                return None

    ratios: List[Optional[Fraction]] = [None] * size
    diagonal = [0] * size
    for root in range(size):
        if ratios[root] is not None:
            continue
        ratios[root] = Fraction(1)
        component = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(size):
                if principal[i][j] == 0:
                    continue
                expected = ratios[i] * Fraction(-principal[i][j], principal[j][i])
                if ratios[j] is None:
                    ratios[j] = expected
                    component.append(j)
                    queue.append(j)
                elif ratios[j] != expected:
                    return None

        common = lcm(*(ratios[i].denominator for i in component))
        scaled = [ratios[i] * common for i in component]
        divisor = gcd(*(int(x) for x in scaled))
        for i, value in zip(component, scaled):
            diagonal[i] = int(value) // divisor

    return diagonal


def quiver_arrows(matrix: ExchangeMatrix) -> List[Tuple[int, int, int]]:
    """Arrow multiset (tail, head, multiplicity) of a skew-symmetric seed's quiver.

    Frozen rows contribute arrows between the frozen vertex and the
    exchangeable ones.

    Raises:
        ValidationException: If the principal part is not skew-symmetric
    """
    principal = matrix.principal_part()
    n = matrix.n
    for i in range(n):
        for j in range(n):
            if principal[i][j] != -principal[j][i]:
                raise ValidationException(
                    "principal part", "quiver needs a skew-symmetric principal part"
                )

    arrows = []
    for i in range(matrix.m):
        for j in range(n):
            value = matrix.entries[i][j]
            if value > 0:
                arrows.append((i + 1, j + 1, value))
            elif value < 0 and i >= n:
                arrows.append((j + 1, i + 1, -value))
    return sorted(arrows)


# ============================================================================
# Seed / cluster operations
# ============================================================================


def exchange_value(cluster: Sequence[Fraction], matrix: ExchangeMatrix, k: int) -> Fraction:
    """x_k' from x_k x_k' = prod_{b_ik > 0} x_i^b_ik + prod_{b_ik < 0} x_i^-b_ik."""
    positive = Fraction(1)
    negative = Fraction(1)
    for i, x in enumerate(cluster):
        b_ik = matrix.entries[i][k - 1]
        if b_ik > 0:
            positive *= x**b_ik
        elif b_ik < 0:
            negative *= x ** (-b_ik)
    return (positive + negative) / cluster[k - 1]


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Mutate a seed in direction k: exchange relation on x_k, matrix mutation on B.

    Raises:
        IndexOutOfRangeException: If k is not in 1..n
    """
    if not 1 <= k <= seed.matrix.n:
        raise IndexOutOfRangeException(k, seed.matrix.n)

    cluster = list(seed.cluster)
    cluster[k - 1] = exchange_value(seed.cluster, seed.matrix, k)
    return Seed(cluster=tuple(cluster), matrix=mutate_matrix(seed.matrix, k))


def permute_cluster(cluster: Sequence[Fraction], sigma: Sequence[int]) -> Tuple[Fraction, ...]:
    """x'_i = x_{sigma^-1(i)}."""
    inverse = invert_permutation(tuple(sigma))
    return tuple(cluster[inverse[i] - 1] for i in range(len(cluster)))


def permute_seed(seed: Seed, sigma: Sequence[int]) -> Seed:
    return Seed(
        cluster=permute_cluster(seed.cluster, sigma),
        matrix=apply_permutation(seed.matrix, sigma),
    )


# ============================================================================
# Invariance of the seed matrix
# ============================================================================

# Direction -> (cycle label, permutation) with sigma * mu_k(B) == B
INVARIANCE_PERMUTATIONS: Dict[int, Tuple[str, Permutation]] = {
    1: ("(12)", permutation_from_cycles("(12)", 5)),
    2: ("(12)", permutation_from_cycles("(12)", 5)),
    3: ("(1234)", permutation_from_cycles("(1234)", 5)),
    4: ("(4321)", permutation_from_cycles("(4321)", 5)),
}


def verify_B_invariance(
    matrix: Optional[ExchangeMatrix] = None,
    permutations: Optional[Dict[int, Sequence[int]]] = None,
) -> InvarianceReport:
    """Check sigma_(12) mu_1 = sigma_(12) mu_2 = sigma_(1234) mu_3 = sigma_(4321) mu_4 = id on B.

    Args:
        matrix: Matrix to test, defaults to the seed matrix
        permutations: Per-direction overrides of the permutation (image tuples)

    Returns:
        InvarianceReport with one check per direction
    """
    matrix = matrix or SEED_MATRIX
    overrides = permutations or {}
    checks = []
    for k, (label, default_sigma) in INVARIANCE_PERMUTATIONS.items():
        sigma = tuple(overrides.get(k, default_sigma))
        passed = apply_permutation(mutate_matrix(matrix, k), sigma) == matrix
        checks.append(
            IdentityCheck(
                direction=k,
                permutation=sigma,
                passed=passed,
                label=f"sigma{label if k not in overrides else str(sigma)} mu{k}",
            )
        )
        if not passed:
            log.warning(f"Invariance identity failed for direction {k} with sigma={sigma}")

    return InvarianceReport(
        checks=checks, skew_symmetrizer=is_skew_symmetrizable(matrix.principal_part())
    )
