"""Extended exchange matrices, seeds and their mutations."""

from src.cluster.models import ExchangeMatrix, InvarianceReport, Seed
from src.cluster.mutation import (
    SEED_MATRIX,
    apply_permutation,
    is_skew_symmetrizable,
    mutate_matrix,
    mutate_seed,
    permutation_from_cycles,
    quiver_arrows,
    verify_B_invariance,
)

__all__ = [
    "ExchangeMatrix",
    "Seed",
    "InvarianceReport",
    "SEED_MATRIX",
    "mutate_matrix",
    "apply_permutation",
    "mutate_seed",
    "is_skew_symmetrizable",
    "permutation_from_cycles",
    "quiver_arrows",
    "verify_B_invariance",
]
