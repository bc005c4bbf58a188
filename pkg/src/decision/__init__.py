"""Membership decision for the orbit of (eps, eps, eps, eps, eps) with witnesses."""

from src.decision.models import Decision, ReducedData, StepMatrix, Witness
from src.decision.orbit_decision import (
    beta3_power,
    check_cde_relation,
    criterion,
    decide,
    derive_mt,
    reconstruct_from_cde,
    replay,
    s344_index,
    step_matrix,
    witness,
)

__all__ = [
    "Decision",
    "ReducedData",
    "StepMatrix",
    "Witness",
    "derive_mt",
    "check_cde_relation",
    "reconstruct_from_cde",
    "step_matrix",
    "beta3_power",
    "s344_index",
    "criterion",
    "witness",
    "decide",
    "replay",
]
