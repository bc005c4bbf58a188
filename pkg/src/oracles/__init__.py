"""Exhaustive searches used to check the solvers."""

from src.oracles.brute_force import (
    SearchBox,
    brute_force_conic_box,
    brute_force_h_box,
    brute_force_quintuples,
)

__all__ = [
    "SearchBox",
    "brute_force_quintuples",
    "brute_force_conic_box",
    "brute_force_h_box",
]
