"""Tests for the Markov-like triple solver.

Tests cover:
- Exhaustive search and tree enumeration agree
- Descent to (3, 4, 4) and replay of the recorded word
- Swap elimination and words for permuted solutions
"""

import pytest

from src.dynamics.words import TildeWord
from src.exceptions import NotASolutionException, ValidationException
from src.reduction.conserved import ROOT_TRIPLE, Triple, apply_tilde_word
from src.solvers.markov_like import (
    SWAP,
    brute_force_triples,
    descend_to_root,
    eliminate_swaps,
    enumerate_tree,
    permute_solution,
    vieta_neighbours,
)

# ============================================================================
# Enumeration Tests
# ============================================================================


class TestEnumeration:
    """Test both enumerations of the sorted solutions."""

    @pytest.mark.parametrize(
        "bound,expected",
        [
            (3, []),
            (4, [(3, 4, 4)]),
            (13, [(3, 4, 4), (3, 4, 8), (4, 4, 13)]),
        ],
    )
    def test_small_bounds(self, bound, expected):
        assert brute_force_triples(bound) == expected
        assert enumerate_tree(bound) == expected

    @pytest.mark.parametrize("bound", [50, 500, 2000])
    def test_tree_equals_brute_force(self, bound):
        assert enumerate_tree(bound) == brute_force_triples(bound)

    def test_no_solution_with_a_coordinate_below_three(self):
        assert min(t[0] for t in brute_force_triples(2000)) == 3

    def test_worker_pool_gives_same_result(self):
        assert brute_force_triples(300, workers=2) == brute_force_triples(300)

    def test_neighbours_of_root(self):
        assert vieta_neighbours((3, 4, 4)) == [(4, 4, 13), (3, 4, 8), (3, 4, 8)]

    def test_rejects_non_positive_bound(self):
        with pytest.raises(ValidationException):
            enumerate_tree(0)
        with pytest.raises(ValidationException):
            brute_force_triples(0)

    @pytest.mark.slow
    def test_tree_equals_brute_force_at_ten_thousand(self):
        tree = enumerate_tree(10**4)
        assert tree == brute_force_triples(10**4)
        for t in tree:
            assert apply_tilde_word(ROOT_TRIPLE, descend_to_root(Triple(*t))) == Triple(*t)


# ============================================================================
# Descent Tests
# ============================================================================


class TestDescent:
    """Test Vieta descent to the root."""

    @pytest.mark.parametrize(
        "t,word",
        [
            ((3, 4, 4), ""),
            ((3, 4, 8), "a"),
            ((3, 8, 4), "A"),
            ((4, 4, 13), "Ba"),
        ],
    )
    def test_known_words(self, t, word):
        result = descend_to_root(Triple(*t))
        assert isinstance(result, TildeWord)
        assert result.letters == word

    @pytest.mark.parametrize("bound", [200, 1500])
    def test_replay_every_arrangement(self, bound):
        for x, y, z in enumerate_tree(bound):
            for t in {(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)}:
                word = descend_to_root(Triple(*t))
                assert apply_tilde_word(ROOT_TRIPLE, word) == Triple(*t)
                assert set(word.letters) <= set("aAbB")

    @pytest.mark.parametrize("t", [(1, 1, 1), (3, 4, 5), (0, 4, 4), (-3, -4, 4)])
    def test_rejects_non_solutions(self, t):
        with pytest.raises(NotASolutionException):
            descend_to_root(Triple(*t))

    def test_rejects_rational_triple(self):
        with pytest.raises(NotASolutionException):
            descend_to_root(Triple("3/2", 4, 4))


class TestSwapElimination:
    """Test moving swaps to the root."""

    def test_no_swaps(self):
        assert eliminate_swaps(["a", "b"]).letters == "ab"

    def test_swap_inverts_earlier_letters(self):
        assert eliminate_swaps(["a", "B", SWAP]).letters == "Ab"

    def test_two_swaps_cancel(self):
        assert eliminate_swaps(["a", SWAP, "b", SWAP]).letters == "aB"


class TestPermuteSolution:
    """Test words for permuted solutions."""

    @pytest.mark.parametrize(
        "order,expected",
        [
            ((0, 1, 2), "a"),
            ((0, 2, 1), "A"),
            ((1, 2, 0), "ab"),
            ((2, 0, 1), "abb"),
        ],
    )
    def test_words_for_3_4_8(self, order, expected):
        word = permute_solution(TildeWord("a"), order)
        assert word.letters == expected
        base = (3, 4, 8)
        assert apply_tilde_word(ROOT_TRIPLE, word) == Triple(*(base[i] for i in order))

    def test_every_order_replays(self):
        base = (4, 4, 13)
        word = descend_to_root(Triple(*base))
        for order in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]:
            permuted = permute_solution(word, order)
            assert apply_tilde_word(ROOT_TRIPLE, permuted) == Triple(*(base[i] for i in order))

    def test_rejects_bad_order(self):
        with pytest.raises(ValidationException):
            permute_solution(TildeWord("a"), (0, 0, 1))
