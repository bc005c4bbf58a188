"""Breadth-first closure of the orbit G(eps, eps, eps, eps, eps) under a component bound."""

from typing import List, Optional, Sequence, Set, Tuple

from src.dynamics.group import apply_gen
from src.dynamics.models import Quintuple
from src.dynamics.words import Letter
from src.exceptions import ValidationException
from src.utils.parallel import flatten, parallel_map
from src.utils.structured_logger import get_structured_logger

slog = get_structured_logger("dynamics.orbit")


def _expand(job: Tuple[Sequence[Quintuple], int]) -> List[Quintuple]:
    """Neighbours of a frontier chunk that stay within the bound."""
    states, bound = job
    out = []
    for state in states:
        for letter in Letter:
            image = apply_gen(state, letter)
            if image.max_component <= bound:
                out.append(image)
    return out


def orbit_bfs(
    epsilon: int, bound: int, workers: Optional[int] = None, chunk_size: int = 256
) -> List[Quintuple]:
    """All orbit elements reachable while every intermediate state stays <= bound.

    Frontier expansion may run in worker processes; deduplication happens in
    this process so the result does not depend on scheduling. The search is
    complete only relative to the pruning: elements whose every word passes
    through a larger state are not returned.

    Args:
        epsilon: Positive integer eps of the initial state
        bound: Inclusive bound on every component
        workers: Worker processes for frontier expansion

    Returns:
        The reached states in lexicographic order
    """
    if epsilon < 1:
        raise ValidationException("epsilon", "must be a positive integer")
    if bound < epsilon:
        raise ValidationException("bound", f"must be at least epsilon={epsilon}")

    root = Quintuple.uniform(epsilon)
    seen: Set[Quintuple] = {root}
    frontier = [root]
    depth = 0
    while frontier:
        chunks = [
            (frontier[i : i + chunk_size], bound)
            for i in range(0, len(frontier), chunk_size)
        ]
        next_frontier = []
        for image in flatten(parallel_map(_expand, chunks, workers)):
            if image not in seen:
                seen.add(image)
                next_frontier.append(image)
        frontier = next_frontier
        depth += 1

    slog.log_search("orbit_bfs", steps=depth, epsilon=epsilon, bound=bound, size=len(seen))
    return sorted(seen)
