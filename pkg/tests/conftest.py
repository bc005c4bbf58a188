"""Shared pytest fixtures and configuration for all test suites.

This module provides common fixtures used across the test files:
- The seed exchange matrix and the initial quintuples
- hypothesis strategies for positive rational quintuples and words
- Known solutions used as anchors
"""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from src.cluster.mutation import SEED_MATRIX
from src.dynamics.models import Quintuple
from src.dynamics.words import GroupWord, Letter
from src.reduction.conserved import ROOT_TRIPLE

# ============================================================================
# Pytest Configuration
# ============================================================================


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: mark test as unit test (fast)")
    config.addinivalue_line("markers", "integration: mark test as crossing several modules")
    config.addinivalue_line(
        "markers", "slow: mark test as a full-size exhaustive check (deselect with -m 'not slow')"
    )


# ============================================================================
# hypothesis strategies
# ============================================================================

positive_fractions = st.builds(
    Fraction, st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=60)
)

quintuples = st.builds(
    Quintuple,
    positive_fractions,
    positive_fractions,
    positive_fractions,
    positive_fractions,
    positive_fractions,
)

words = st.lists(st.sampled_from([letter.value for letter in Letter]), max_size=15).map(
    lambda letters: GroupWord("".join(letters))
)

short_words = st.lists(st.sampled_from([letter.value for letter in Letter]), max_size=12).map(
    lambda letters: GroupWord("".join(letters))
)

epsilons = st.sampled_from([1, 2, 3])


# ============================================================================
# Fixtures
# ============================================================================


@pytest.fixture
def seed_matrix():
    return SEED_MATRIX


@pytest.fixture
def root_quintuple():
    """(1, 1, 1, 1, 1)."""
    return Quintuple.uniform(1)


@pytest.fixture(params=[1, 2, 3])
def epsilon(request):
    return request.param


@pytest.fixture
def root_triple():
    return ROOT_TRIPLE


@pytest.fixture
def hat_h_unit_form():
    """H-hat at eps = 1 as a conic form."""
    from src.solvers.models import ConicForm

    return ConicForm(A=1, B=-9, C=1, E=-112)
