"""Unit tests for quintuples, words and the group action.

Tests cover:
- Quintuple construction and validation
- Word codec, inverses, free reduction and product notation
- Generator formulas, T-invariance and divisibility along the orbit
- Linearised generators and the beta step matrix
- Breadth-first orbit search
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from src.dynamics.group import apply_gen, apply_word, invariant_T, scale
from src.dynamics.linear import apply_beta_matrix, beta_step_matrix, linear_gen
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
from src.exceptions import ParseException, ValidationException
from tests.conftest import epsilons, positive_fractions, quintuples, short_words, words

# ============================================================================
# Quintuple Tests
# ============================================================================


class TestQuintuple:
    """Test the exact state type."""

    def test_coerces_to_fractions(self):
        p = Quintuple.of(1, "3/2", Fraction(5, 7), 2, "4")
        assert p.as_tuple() == (1, Fraction(3, 2), Fraction(5, 7), 2, 4)
        assert all(isinstance(x, Fraction) for x in p)

    @pytest.mark.parametrize("bad", [0, -1, "-2/3"])
    def test_rejects_non_positive(self, bad):
        with pytest.raises(ValidationException):
            Quintuple.of(1, 1, bad, 1, 1)

    def test_rejects_wrong_length(self):
        with pytest.raises(ValidationException):
            Quintuple.of(1, 1, 1, 1)

    def test_rejects_decimal_strings(self):
        with pytest.raises(ParseException):
            Quintuple.of(1, 1, "1.5", 1, 1)

    def test_divisibility(self):
        assert Quintuple.of(2, 4, 6, 2, 2).divisible_by(2)
        assert not Quintuple.of(2, 4, 6, 3, 2).divisible_by(2)
        assert not Quintuple.of(2, "4/3", 6, 2, 2).divisible_by(2)

    def test_wire_form(self):
        assert Quintuple.of(1, "6/4", 3, 4, 5).to_wire() == ["1", "3/2", "3", "4", "5"]
        assert str(Quintuple.uniform(1)) == "(1, 1, 1, 1, 1)"


# ============================================================================
# Word Tests
# ============================================================================


class TestWords:
    """Test the {a, A, b, B} codec."""

    @pytest.mark.parametrize("text", ["", "-", "e"])
    def test_identity_spellings(self, text):
        assert parse_word(text).letters == ""

    def test_tilde_prefix(self):
        word = parse_word("~Ba", TildeWord)
        assert isinstance(word, TildeWord)
        assert word.letters == "Ba"

    def test_tilde_prefix_rejected_on_group_words(self):
        with pytest.raises(ParseException):
            parse_word("~a")

    def test_rejects_unknown_letters(self):
        with pytest.raises(ParseException):
            parse_word("abc")

    def test_format_empty_word(self):
        assert format_word(GroupWord("")) == "-"
        assert format_word(GroupWord("aB")) == "aB"

    def test_inverse(self):
        assert invert_word(GroupWord("aab")).letters == "BAA"

    def test_free_reduction(self):
        assert free_reduce(GroupWord("abBAb")).letters == "b"
        assert GroupWord("aA").free_reduce().letters == ""

    def test_power(self):
        assert GroupWord("ab").power(2).letters == "abab"
        assert GroupWord("ab").power(-1).letters == "BA"

    def test_letter_properties(self):
        assert Letter.ALPHA.inverse is Letter.ALPHA_INV
        assert Letter.BETA_INV.generator == "beta"
        assert Letter.BETA_INV.exponent == -1

    @pytest.mark.parametrize(
        "wire,notation",
        [
            ("bba", "alpha beta^2"),
            ("", "id"),
            ("AAb", "beta alpha^-2"),
            ("a", "alpha"),
        ],
    )
    def test_product_notation(self, wire, notation):
        assert product_notation(GroupWord(wire)) == notation
        assert from_product_notation(notation).letters == wire

    def test_bad_product_notation(self):
        with pytest.raises(ParseException):
            from_product_notation("gamma^2")


# ============================================================================
# Group Action Tests
# ============================================================================


class TestGenerators:
    """Test the generator formulas."""

    @pytest.mark.parametrize(
        "word,expected",
        [
            ("a", (1, 2, 1, 1, 1)),
            ("b", (1, 1, 2, 1, 1)),
            ("bbb", (2, 3, 5, 1, 1)),
            ("BBB", (3, 2, 1, 5, 1)),
            ("", (1, 1, 1, 1, 1)),
        ],
    )
    def test_known_images(self, root_quintuple, word, expected):
        assert apply_word(root_quintuple, word).as_tuple() == expected

    def test_T_values(self, root_quintuple):
        assert invariant_T(root_quintuple) == 0
        assert invariant_T(Quintuple.of(2, 2, 2, 2, 1)) == Fraction(-15, 4)

    @given(quintuples, words)
    @settings(max_examples=200, deadline=None)
    def test_T_invariance(self, p, word):
        assert invariant_T(apply_word(p, word)) == invariant_T(p)

    @pytest.mark.slow
    @given(quintuples, words)
    @settings(max_examples=1000, deadline=None)
    def test_T_invariance_many_words(self, p, word):
        assert invariant_T(apply_word(p, word)) == invariant_T(p)

    @given(quintuples)
    @settings(max_examples=100, deadline=None)
    def test_generators_invert_and_fix_e(self, p):
        for letter in Letter:
            image = apply_gen(p, letter)
            assert image.e == p.e
            assert apply_gen(image, letter.inverse) == p

    @given(quintuples, words)
    @settings(max_examples=100, deadline=None)
    def test_word_then_inverse(self, p, word):
        assert apply_word(apply_word(p, word), word.inverse()) == p

    @given(epsilons, short_words)
    @settings(max_examples=200, deadline=None)
    def test_orbit_is_integral_and_divisible(self, epsilon, word):
        image = apply_word(Quintuple.uniform(epsilon), word)
        assert image.is_integral()
        assert image.divisible_by(epsilon)
        assert image.e == epsilon

    @given(quintuples, short_words, positive_fractions)
    @settings(max_examples=100, deadline=None)
    def test_homogeneity(self, p, word, k):
        assert apply_word(scale(p, k), word) == scale(apply_word(p, word), k)

    def test_scale_rejects_non_positive(self, root_quintuple):
        with pytest.raises(ValidationException):
            scale(root_quintuple, 0)


class TestLinearForms:
    """Test the generator formulas written with the conserved quantities."""

    @given(quintuples)
    @settings(max_examples=100, deadline=None)
    def test_linear_forms_agree(self, p):
        for letter in Letter:
            assert linear_gen(p, letter) == apply_gen(p, letter)

    @given(quintuples)
    @settings(max_examples=50, deadline=None)
    def test_beta_step_matrix(self, p):
        assert apply_beta_matrix(p) == apply_gen(p, Letter.BETA)

    def test_beta_step_matrix_shape(self, root_quintuple):
        matrix = beta_step_matrix(root_quintuple)
        assert matrix.shape == (5, 5)
        assert list(matrix.row(3)) == [0, 0, 0, 0, 0]


# ============================================================================
# Orbit Search Tests
# ============================================================================


class TestOrbitSearch:
    """Test breadth-first enumeration under a component bound."""

    def test_bound_two(self):
        assert [p.as_tuple() for p in orbit_bfs(1, 2)] == [
            (1, 1, 1, 1, 1),
            (1, 1, 1, 2, 1),
            (1, 1, 2, 1, 1),
            (1, 2, 1, 1, 1),
            (2, 1, 1, 1, 1),
        ]

    def test_bound_equal_to_epsilon(self):
        assert orbit_bfs(3, 3) == [Quintuple.uniform(3)]

    def test_scales_with_epsilon(self):
        unit = orbit_bfs(1, 50)
        doubled = orbit_bfs(2, 100)
        assert doubled == [scale(p, 2) for p in unit]

    def test_everything_within_bound_and_T_zero(self):
        for p in orbit_bfs(1, 200):
            assert p.max_component <= 200
            assert invariant_T(p) == 0

    @pytest.mark.parametrize("epsilon,bound", [(0, 5), (2, 1)])
    def test_rejects_bad_arguments(self, epsilon, bound):
        with pytest.raises(ValidationException):
            orbit_bfs(epsilon, bound)

    def test_worker_pool_gives_same_result(self):
        assert orbit_bfs(1, 100, workers=2, chunk_size=4) == orbit_bfs(1, 100)
