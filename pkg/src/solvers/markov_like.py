"""Positive integer solutions of XYZ - X^2 - Y^2 - Z^2 = 7.

Every solution lies in the tilde-group orbit of (3, 4, 4). This module
enumerates that tree, brute-forces the same set independently, and walks any
solution back to the root by Vieta jumps, recording a replayable tilde word.
"""

from math import isqrt
from typing import List, Optional, Sequence, Set, Tuple

from src.config import settings
from src.dynamics.words import TildeWord
from src.exceptions import InternalAssertionException, NotASolutionException, ValidationException
from src.reduction.conserved import (
    ROOT_TRIPLE,
    Triple,
    apply_tilde_gen,
    swap_last,
    tilde_T,
)
from src.utils.parallel import chunked_range, flatten, parallel_map
from src.utils.structured_logger import get_structured_logger

slog = get_structured_logger("solvers.markov_like")

IntTriple = Tuple[int, int, int]

# ============================================================================
# Brute force
# ============================================================================


def _triples_in_x_range(job: Tuple[int, int, int]) -> List[IntTriple]:
    """Sorted solutions with x in [lo, hi) and z <= bound.

    For fixed x <= y the admissible z are integer roots of
    f(l) = l^2 - xy l + x^2 + y^2 + 7. Once xy > 2*bound the larger root
    exceeds the bound, and once xy > 4y + 14 the smaller root drops below y,
    so the y-loop stops there.
    """
    lo, hi, bound = job
    found = []
    for x in range(lo, hi):
        for y in range(x, bound + 1):
            s = x * y
            if s > 2 * bound and s > 4 * y + 14:
                break
            disc = s * s - 4 * (x * x + y * y + 7)
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc or (s + r) % 2:
                continue
            for z in {(s - r) // 2, (s + r) // 2}:
                if y <= z <= bound:
                    found.append((x, y, z))
    return found


def _x_limit(bound: int) -> int:
    """Largest x that can start a sorted solution with z <= bound."""
    x = 1
    while x * x <= 2 * bound or x * x <= 4 * x + 14:
        x += 1
    return x


def brute_force_triples(bound: int, workers: Optional[int] = None) -> List[IntTriple]:
    """All sorted x <= y <= z <= bound solving the equation, by exhaustive search.

    Args:
        bound: Inclusive bound on the largest coordinate
        workers: Processes to split the x-range across

    Returns:
        Sorted list of ascending triples
    """
    if bound < 1:
        raise ValidationException("bound", "must be a positive integer")
    chunks = [(lo, hi, bound) for lo, hi in chunked_range(1, min(_x_limit(bound), bound + 1))]
    results = parallel_map(_triples_in_x_range, chunks, workers)
    return sorted(set(flatten(results)))


# ============================================================================
# Tree enumeration
# ============================================================================


def vieta_neighbours(t: IntTriple) -> List[IntTriple]:
    """Replace each coordinate by the other root of its quadratic; sorted results."""
    x, y, z = t
    return [
        tuple(sorted((y * z - x, y, z))),  # type: ignore[misc]
        tuple(sorted((x, x * z - y, z))),  # type: ignore[misc]
        tuple(sorted((x, y, x * y - z))),  # type: ignore[misc]
    ]


def enumerate_tree(bound: int) -> List[IntTriple]:
    """Closure of (3, 4, 4) under Vieta moves, pruned at max <= bound.

    Returns:
        Sorted list of ascending triples
    """
    if bound < 1:
        raise ValidationException("bound", "must be a positive integer")
    root = ROOT_TRIPLE.as_ints()
    if max(root) > bound:
        return []
    seen: Set[IntTriple] = {root}
    stack = [root]
    while stack:
        current = stack.pop()
        for neighbour in vieta_neighbours(current):
            if neighbour[2] <= bound and neighbour not in seen:
                seen.add(neighbour)
                stack.append(neighbour)
    return sorted(seen)


# ============================================================================
# Descent
# ============================================================================

SWAP = "s"

# Move sequences tried in order to bring a triple into ascending order
_SORTING_MOVES: Tuple[str, ...] = ("", "b", "bb", "s", "sb", "sbb")


def _apply_move(t: Triple, move: str) -> Triple:
    return swap_last(t) if move == SWAP else apply_tilde_gen(t, move)


def _apply_moves(t: Triple, moves: str) -> Triple:
    for move in moves:
        t = _apply_move(t, move)
    return t


def _validate_solution(t: Triple) -> None:
    if not t.is_positive_integral():
        raise NotASolutionException(t, "entries must be positive integers")
    if tilde_T(t) != 0:
        raise NotASolutionException(t, f"T~ = {tilde_T(t)}")
    low, mid, _ = sorted(t.as_ints())
    if low < 3 or mid < 4:
        raise NotASolutionException(t, "sorted form must satisfy x >= 3 and y >= 4")


def eliminate_swaps(moves: Sequence[str]) -> TildeWord:
    """Drop every swap from a leftmost-first move list acting on the root.

    Pushing sigma toward the root with sigma g~ = g~^-1 sigma inverts each
    letter once per later swap; sigma fixes (3, 4, 4) so it is absorbed there.
    """
    letters = []
    later_swaps = 0
    for move in reversed(moves):
        if move == SWAP:
            later_swaps += 1
            continue
        letters.append(move.swapcase() if later_swaps % 2 else move)
    return TildeWord("".join(reversed(letters)))


def descend_to_root(t: Triple, max_steps: Optional[int] = None) -> TildeWord:
    """A tilde word w with apply_tilde_word((3, 4, 4), w) == t.

    Each round sorts the triple with swaps and rotations, then applies the
    Vieta step alpha~^-1 which replaces the maximum by a strictly smaller
    value. The recorded moves are reversed, inverted and cleared of swaps.

    Raises:
        NotASolutionException: If t is not a positive integer solution
        InternalAssertionException: If a step fails to decrease the maximum
    """
    t = Triple(*t) if not isinstance(t, Triple) else t
    _validate_solution(t)
    max_steps = max_steps or settings.descent_max_steps

    moves: List[str] = []
    current = t
    steps = 0
    while True:
        for candidate in _SORTING_MOVES:
            arranged = _apply_moves(current, candidate)
            if arranged.x <= arranged.y <= arranged.z:
                break
        else:  # pragma: no cover - the six arrangements cover every order
            raise InternalAssertionException("descend_to_root", f"cannot sort {current}")
        moves.extend(candidate)
        current = arranged
        if current == ROOT_TRIPLE:
            break

        steps += 1
        if steps > max_steps:
            slog.log_search("descend_to_root", steps=steps, found=False, triple=str(t))
            raise InternalAssertionException("descend_to_root", f"no root after {max_steps} steps")

        stepped = apply_tilde_gen(current, "A")
        if max(stepped.as_tuple()) >= current.z:
            raise InternalAssertionException(
                "descend_to_root", f"Vieta step did not decrease max at {current}"
            )
        moves.append("A")
        current = stepped

    inverse_moves = [m if m == SWAP else m.swapcase() for m in reversed(moves)]
    word = eliminate_swaps(inverse_moves)
    slog.log_search("descend_to_root", steps=steps, triple=str(t), word=word.letters)
    return word


# ============================================================================
# Permutations of a solution
# ============================================================================


def _arrange(labels: Tuple[int, int, int], swap: bool, rotation: int) -> Tuple[int, ...]:
    x, y, z = labels
    out = (x, z, y) if swap else (x, y, z)
    for _ in range(rotation):
        out = (out[1], out[2], out[0])
    return out


def permute_solution(word: TildeWord, order: Sequence[int]) -> TildeWord:
    """Word for the permuted solution (t[order[0]], t[order[1]], t[order[2]]).

    The permutation is split as beta~^k after an optional swap. A swap inverts
    every letter of the word (sigma commutes past the word and is absorbed at
    the root); each rotation appends one beta~.

    Args:
        word: Tilde word with apply_tilde_word((3, 4, 4), word) == t
        order: 0-based positions of t read into the new triple

    Raises:
        ValidationException: If order is not a permutation of (0, 1, 2)
    """
    order = tuple(order)
    if sorted(order) != [0, 1, 2]:
        raise ValidationException("order", f"{order} is not a permutation of (0, 1, 2)")
    for swap in (False, True):
        for rotation in range(3):
            if _arrange((0, 1, 2), swap, rotation) == order:
                base = word.letters.swapcase() if swap else word.letters
                return TildeWord(base + "b" * rotation)
    raise InternalAssertionException("permute_solution", f"no decomposition for {order}")
