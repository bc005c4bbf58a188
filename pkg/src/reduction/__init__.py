"""Reduction of the quintuple dynamics to triples via phi."""

from src.reduction.conserved import (
    ROOT_TRIPLE,
    Triple,
    apply_tilde_gen,
    apply_tilde_word,
    conserved_quantities,
    lift_word,
    phi,
    project_word,
    swap_last,
    tilde_T,
)

__all__ = [
    "Triple",
    "ROOT_TRIPLE",
    "conserved_quantities",
    "phi",
    "tilde_T",
    "apply_tilde_gen",
    "apply_tilde_word",
    "swap_last",
    "lift_word",
    "project_word",
]
