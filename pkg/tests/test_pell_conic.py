"""Tests for the Pell, conic and H0 solvers.

Tests cover:
- Least solutions of X^2 - D Y^2 = 4 by search and by continued fractions
- Fundamental solutions and their orbits under the automorphism
- theta, H, H-hat and the H0 recurrence
- Agreement with the brute-force oracles
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import (
    ConicFormException,
    NonSquarefreeDiscriminantException,
    PellDomainException,
)
from src.oracles.brute_force import brute_force_conic_box, brute_force_h_box
from src.solvers.models import ConicForm, H0Element, PellSolution
from src.utils.exact import is_square
from src.solvers.pell_conic import (
    automorphism_matrix,
    conic_orbit,
    enumerate_conic,
    h0_elements,
    h0_step,
    h0_step_back,
    h0_via_conic,
    h_value,
    hat_h,
    hat_h_form,
    is_squarefree,
    least_pell4,
    least_pell4_cf,
    matthews_fundamentals,
    points_within,
    theta,
    theta_inv,
)

# ============================================================================
# Pell Equation Tests
# ============================================================================


class TestPell:
    """Test the least positive solution of X^2 - D Y^2 = 4."""

    @pytest.mark.parametrize(
        "D,solution",
        [(2, (6, 4)), (3, (4, 2)), (5, (3, 1)), (13, (11, 3)), (21, (5, 1)), (77, (9, 1))],
    )
    def test_known_solutions(self, D, solution):
        result = least_pell4(D)
        assert (result.x, result.y) == solution

    @pytest.mark.parametrize("D", [17, 21, 29, 41, 53, 77, 109])
    def test_continued_fractions_agree_with_search(self, D):
        default = least_pell4(D, cross_check=True)
        assert (default.x, default.y) == least_pell4_cf(D)
        assert default == least_pell4(D, search=True)

    def test_large_solution_uses_continued_fractions(self):
        """D = 193 has y near 9 * 10^11, far beyond any y-search."""
        solution = least_pell4(193, cross_check=True)
        assert (solution.x, solution.y) == (12448646853698, 896073208080)
        assert solution.x**2 - 193 * solution.y**2 == 4

    def test_conic_with_large_pell_solution(self):
        """U^2 + UV - 24 V^2 = -4 has D = 97, far past the reach of the y-search."""
        form = ConicForm(A=1, B=1, C=-24, E=-4)
        fundamentals = matthews_fundamentals(form)
        assert (4, 1) in fundamentals
        assert all(form.satisfied_by(u, v) for u, v in fundamentals)
        assert all(form.satisfied_by(U, V) for U, V in enumerate_conic(form, (-2, 2)))

    def test_result_is_minimal(self):
        solution = least_pell4(53)
        assert (solution.x, solution.y) == (51, 7)
        assert not any(is_square(4 + 53 * y * y) for y in range(1, solution.y))

    @pytest.mark.parametrize("D", [0, -3, 4, 9])
    def test_domain_errors(self, D):
        with pytest.raises(PellDomainException):
            least_pell4(D)

    def test_continued_fractions_need_large_D(self):
        with pytest.raises(PellDomainException):
            least_pell4_cf(13)

    def test_small_D_uses_search(self):
        assert least_pell4(5) == least_pell4(5, search=True)
        assert least_pell4(13, cross_check=True) == least_pell4(13, search=True)

    def test_solution_model_validates(self):
        with pytest.raises(ValueError):
            PellSolution(D=77, x=10, y=1)

    @pytest.mark.parametrize("n,expected", [(77, True), (5, True), (32, False), (0, False), (12, False)])
    def test_squarefree(self, n, expected):
        assert is_squarefree(n) is expected


# ============================================================================
# Conic Tests
# ============================================================================


class TestFundamentals:
    """Test the positive fundamental solutions."""

    @pytest.mark.parametrize("eps", [1, 2, 3])
    def test_hat_h_fundamentals(self, eps):
        assert matthews_fundamentals(hat_h_form(eps)) == [(32 * eps, 4 * eps)]

    def test_small_form(self):
        assert matthews_fundamentals(ConicForm(A=1, B=-3, C=1, E=-4)) == [(4, 2)]

    @pytest.mark.parametrize(
        "form",
        [
            ConicForm(A=0, B=3, C=1, E=-4),
            ConicForm(A=1, B=-3, C=1, E=4),
            ConicForm(A=1, B=0, C=1, E=-1),
        ],
    )
    def test_hypotheses(self, form):
        with pytest.raises(ConicFormException):
            matthews_fundamentals(form)

    def test_non_squarefree_discriminant(self):
        form = ConicForm(A=1, B=-6, C=1, E=-4)
        with pytest.raises(NonSquarefreeDiscriminantException):
            matthews_fundamentals(form)

    def test_form_evaluation(self, hat_h_unit_form):
        assert hat_h_unit_form.D == 77
        assert hat_h_unit_form.satisfied_by(32, 4)
        assert not hat_h_unit_form.satisfied_by(32, 5)


class TestConicOrbit:
    """Test images of the fundamentals under the automorphism."""

    def test_automorphism(self, hat_h_unit_form):
        matrix = automorphism_matrix(hat_h_unit_form, least_pell4(77))
        assert matrix.tolist() == [[9, 1], [-1, 0]]
        assert matrix.det() == 1

    def test_orbit_of_32_4(self, hat_h_unit_form):
        points = [(p.U, p.V) for p in conic_orbit(hat_h_unit_form, (-6, 5))]
        assert points == [
            (22432, 199364),
            (2524, 22432),
            (284, 2524),
            (32, 284),
            (4, 32),
            (4, 4),
            (32, 4),
            (284, 32),
            (2524, 284),
            (22432, 2524),
            (199364, 22432),
            (1771844, 199364),
        ]

    def test_orbit_points_carry_their_origin(self, hat_h_unit_form):
        first = conic_orbit(hat_h_unit_form, (0, 0))[0]
        assert first.fundamental == [32, 4]
        assert first.n == 0

    def test_opposites_are_included(self, hat_h_unit_form):
        points = enumerate_conic(hat_h_unit_form, (0, 0))
        assert points == [(-32, -4), (32, 4)]
        assert enumerate_conic(hat_h_unit_form, (0, 0), include_opposite=False) == [(32, 4)]

    def test_matches_oracle_in_small_box(self, hat_h_unit_form):
        generated = points_within(enumerate_conic(hat_h_unit_form, (-6, 6)), 10**4)
        assert len(generated) == 14
        assert generated == set(brute_force_conic_box(hat_h_unit_form, 10**4))

    def test_small_form_matches_oracle(self):
        form = ConicForm(A=1, B=-3, C=1, E=-4)
        generated = points_within(enumerate_conic(form, (-8, 8)), 2000)
        assert generated == set(brute_force_conic_box(form, 2000))

    @pytest.mark.slow
    def test_small_form_matches_oracle_in_large_box(self):
        form = ConicForm(A=1, B=-3, C=1, E=-4)
        generated = points_within(enumerate_conic(form, (-12, 12)), 10**4)
        assert generated == set(brute_force_conic_box(form, 10**4))

    @pytest.mark.slow
    @pytest.mark.parametrize("eps", [1, 2, 3])
    def test_matches_oracle_in_large_box(self, eps):
        form = hat_h_form(eps)
        generated = points_within(enumerate_conic(form, (-6, 6)), 10**6)
        assert generated == set(brute_force_conic_box(form, 10**6))
        if eps == 1:
            assert len(generated) == 22


# ============================================================================
# theta, H and H0 Tests
# ============================================================================


class TestHyperbolas:
    """Test theta and the two hyperbolas."""

    def test_theta(self):
        assert theta(5, 1) == 32
        assert theta_inv(32, 1) == 5
        assert theta_inv(4, 1) == 1
        assert theta_inv(5, 1).denominator == 7

    @given(
        st.integers(min_value=1, max_value=5),
        st.integers(min_value=-500, max_value=500),
        st.integers(min_value=-500, max_value=500),
    )
    @settings(max_examples=200, deadline=None)
    def test_theta_conjugates_H(self, eps, x, y):
        assert hat_h(theta(x, eps), theta(y, eps), eps) == 49 * h_value(x, y, eps)

    def test_h_value_on_and_off(self):
        assert h_value(1, 1, 1) == 0
        assert h_value(2, 2, 1) != 0


class TestH0:
    """Test the elements of H0."""

    def test_unit_elements(self):
        points = [(el.n, el.point()) for el in h0_elements(1, (-1, 7))]
        assert points == [
            (-1, (1, 5)),
            (0, (1, 1)),
            (1, (5, 1)),
            (2, (41, 5)),
            (3, (361, 41)),
            (4, (3205, 361)),
            (5, (28481, 3205)),
            (6, (253121, 28481)),
            (7, (2249605, 253121)),
        ]

    @pytest.mark.parametrize("eps", [1, 2, 3])
    def test_elements_lie_on_H_and_are_divisible(self, eps):
        for element in h0_elements(eps, (-6, 6)):
            assert h_value(element.x, element.y, eps) == 0
            assert element.x % eps == 0 and element.y % eps == 0

    @pytest.mark.parametrize("eps", [1, 2, 3])
    def test_recurrence(self, eps):
        elements = h0_elements(eps, (-6, 6))
        for before, after in zip(elements, elements[1:]):
            assert h0_step(before.point(), eps) == after.point()
            assert h0_step_back(after.point(), eps) == before.point()

    @pytest.mark.parametrize("eps", [1, 2, 3])
    def test_conic_route_agrees(self, eps):
        via_conic = {el.point() for el in h0_via_conic(eps, (-6, 6))}
        assert via_conic == {el.point() for el in h0_elements(eps, (-6, 6))}

    @pytest.mark.parametrize("eps", [1, 2, 3])
    def test_matches_oracle_in_small_box(self, eps):
        generated = points_within((el.point() for el in h0_elements(eps, (-6, 6))), 10**4)
        assert generated == set(brute_force_h_box(eps, 10**4))

    @pytest.mark.slow
    @pytest.mark.parametrize("eps", [1, 2, 3])
    def test_matches_oracle_in_large_box(self, eps):
        generated = points_within((el.point() for el in h0_elements(eps, (-8, 8))), 10**6)
        assert generated == set(brute_force_h_box(eps, 10**6))

    def test_model_rejects_points_off_H(self):
        with pytest.raises(ValueError):
            H0Element(x=2, y=2, epsilon=1)
        with pytest.raises(ValueError):
            H0Element(x=1, y=1, epsilon=0)
