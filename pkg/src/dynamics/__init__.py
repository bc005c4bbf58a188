"""Group action of G = <alpha, beta> on positive quintuples."""

from src.dynamics.group import apply_gen, apply_word, invariant_T, scale
from src.dynamics.models import Quintuple
from src.dynamics.orbit import orbit_bfs
from src.dynamics.words import (
    GroupWord,
    Letter,
    TildeWord,
    format_word,
    free_reduce,
    from_product_notation,
    invert_word,
    product_notation,
    parse_word,
)

__all__ = [
    "Quintuple",
    "Letter",
    "GroupWord",
    "TildeWord",
    "apply_gen",
    "apply_word",
    "invariant_T",
    "scale",
    "orbit_bfs",
    "parse_word",
    "format_word",
    "invert_word",
    "free_reduce",
    "product_notation",
    "from_product_notation",
]
