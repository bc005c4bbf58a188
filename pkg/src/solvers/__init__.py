"""Exact solvers: the Markov-like triple equation and Pell/conic points."""

from src.solvers.markov_like import (
    brute_force_triples,
    descend_to_root,
    enumerate_tree,
    permute_solution,
)
from src.solvers.models import ConicForm, H0Element, PellSolution
from src.solvers.pell_conic import (
    enumerate_conic,
    h0_elements,
    least_pell4,
    matthews_fundamentals,
    theta,
    theta_inv,
)

__all__ = [
    "brute_force_triples",
    "enumerate_tree",
    "descend_to_root",
    "permute_solution",
    "ConicForm",
    "PellSolution",
    "H0Element",
    "least_pell4",
    "matthews_fundamentals",
    "enumerate_conic",
    "theta",
    "theta_inv",
    "h0_elements",
]
