"""The generators alpha, beta and their inverses as relabelled seed mutations.

    alpha = sigma_(12) mu_1        alpha^-1 = sigma_(12) mu_2
    beta  = sigma_(4321) mu_4      beta^-1  = sigma_(1234) mu_3

Because sigma * mu_k fixes the seed matrix, each composite acts on clusters
alone and can be iterated.
"""

from fractions import Fraction
from typing import Dict, List, Tuple

from src.cluster.models import GeneratorCheck, Seed
from src.cluster.mutation import (
    SEED_MATRIX,
    exchange_value,
    mutate_seed,
    permutation_from_cycles,
    permute_seed,
)
from src.dynamics.group import apply_gen
from src.dynamics.models import Quintuple
from src.dynamics.words import Letter

# letter -> (mutation direction, relabelling)
GENERATOR_FACTORS: Dict[Letter, Tuple[int, Tuple[int, ...]]] = {
    Letter.ALPHA: (1, permutation_from_cycles("(12)", 5)),
    Letter.ALPHA_INV: (2, permutation_from_cycles("(12)", 5)),
    Letter.BETA: (4, permutation_from_cycles("(4321)", 5)),
    Letter.BETA_INV: (3, permutation_from_cycles("(1234)", 5)),
}


def cluster_mutations(p: Quintuple) -> Dict[int, Tuple[Fraction, ...]]:
    """mu_1..mu_4 of the seed (P, B) on the cluster only."""
    cluster = p.as_tuple()
    out = {}
    for k in range(1, SEED_MATRIX.n + 1):
        mutated = list(cluster)
        mutated[k - 1] = exchange_value(cluster, SEED_MATRIX, k)
        out[k] = tuple(mutated)
    return out


def generator_via_seed(p: Quintuple, letter: Letter) -> Seed:
    """sigma * mu_k applied to the seed (P, B)."""
    k, sigma = GENERATOR_FACTORS[Letter(letter)]
    return permute_seed(mutate_seed(Seed(cluster=p.as_tuple(), matrix=SEED_MATRIX), k), sigma)


def verify_generator_factorisation(p: Quintuple) -> List[GeneratorCheck]:
    """Check that every sigma * mu_k returns (generator(P), B)."""
    checks = []
    for letter, (k, sigma) in GENERATOR_FACTORS.items():
        seed = generator_via_seed(p, letter)
        expected = apply_gen(p, letter)
        passed = seed.matrix == SEED_MATRIX and seed.cluster == expected.as_tuple()
        checks.append(
            GeneratorCheck(letter=letter.value, direction=k, permutation=sigma, passed=passed)
        )
    return checks
