"""Unit tests for the exact-number codec, Result wrapper, settings and logging helpers.

Tests cover:
- Integer and rational parsing, formatting and square roots
- The sympy bridge
- Range chunking and the process-pool map
- Result and exception payloads
- Settings overrides and correlation ids
"""

from fractions import Fraction

import pytest
from sympy import Rational, sqrt

from src.config import Settings, settings
from src.exceptions import ErrorCode, NotASolutionException, ParseException, ValidationException
from src.utils.exact import (
    ceil_sqrt,
    exact_sqrt,
    format_rational,
    from_sympy,
    is_integral,
    is_square,
    matrix_from_rows,
    parse_integer,
    parse_rational,
    to_fraction,
    to_sympy,
)
from src.utils.parallel import chunked_range, flatten, parallel_map
from src.utils.result import Result
from src.utils.structured_logger import (
    clear_correlation_id,
    get_correlation_id,
    get_structured_logger,
    set_correlation_id,
)

# ============================================================================
# Exact Number Tests
# ============================================================================


class TestParsing:
    """Test the exact wire format for numbers."""

    @pytest.mark.parametrize("text,value", [("12", 12), ("-7", -7), (" +3 ", 3)])
    def test_integers(self, text, value):
        assert parse_integer(text) == value

    @pytest.mark.parametrize("text", ["1.0", "1e3", "", "3/4", "abc"])
    def test_bad_integers(self, text):
        with pytest.raises(ParseException):
            parse_integer(text)

    @pytest.mark.parametrize("text,value", [("3/6", Fraction(1, 2)), ("-5", Fraction(-5)), ("7/1", 7)])
    def test_rationals(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["1/0", "0.5", "1/2/3", "1 / 2"])
    def test_bad_rationals(self, text):
        with pytest.raises(ParseException):
            parse_rational(text)

    def test_to_fraction_rejects_floats_and_bools(self):
        with pytest.raises(ParseException):
            to_fraction(0.5)  # type: ignore[arg-type]
        with pytest.raises(ParseException):
            to_fraction(True)

    @pytest.mark.parametrize(
        "value,text", [(Fraction(6, 4), "3/2"), (Fraction(-4, 2), "-2"), (10**30, str(10**30))]
    )
    def test_format(self, value, text):
        assert format_rational(value) == text

    def test_is_integral(self):
        assert is_integral(Fraction(4, 2))
        assert not is_integral(Fraction(1, 3))


class TestSquareRoots:
    """Test exact square-root helpers."""

    @pytest.mark.parametrize("n,root", [(0, 0), (1, 1), (16, 4), (15, None), (-4, None), (10**40, 10**20)])
    def test_exact_sqrt(self, n, root):
        assert exact_sqrt(n) == root
        assert is_square(n) is (root is not None)

    @pytest.mark.parametrize("n,root", [(0, 0), (-3, 0), (10, 4), (16, 4), (17, 5)])
    def test_ceil_sqrt(self, n, root):
        assert ceil_sqrt(n) == root


class TestSympyBridge:
    """Test conversion to and from sympy."""

    def test_round_trip(self):
        assert from_sympy(to_sympy(Fraction(-3, 7))) == Fraction(-3, 7)
        assert from_sympy(Rational(4, 2)) == 2
        assert from_sympy(5) == 5

    def test_rejects_irrationals(self):
        with pytest.raises(ParseException):
            from_sympy(sqrt(2))

    def test_matrix_entries_stay_exact(self):
        matrix = matrix_from_rows([[Fraction(1, 3), 2]])
        assert matrix[0, 0] == Rational(1, 3)


# ============================================================================
# Parallel Helper Tests
# ============================================================================


def _square(x: int) -> int:
    return x * x


class TestParallel:
    """Test chunking and the process-pool map."""

    def test_chunks(self):
        assert chunked_range(0, 10, 4) == [(0, 4), (4, 8), (8, 10)]
        assert chunked_range(5, 5, 4) == []

    def test_in_process_map_keeps_order(self):
        assert parallel_map(_square, [3, 1, 2], workers=1) == [9, 1, 4]

    def test_default_workers_follow_settings(self, monkeypatch):
        monkeypatch.setattr(settings, "oracle_workers", 1)
        assert not settings.parallel_enabled
        assert parallel_map(lambda x: x + 1, [1, 2, 3]) == [2, 3, 4]

    def test_pool_map_keeps_order(self):
        assert parallel_map(_square, list(range(10)), workers=2) == [x * x for x in range(10)]

    def test_flatten(self):
        assert flatten([[1, 2], [], [3]]) == [1, 2, 3]


# ============================================================================
# Result Wrapper Tests
# ============================================================================


class TestResult:
    """Test the Result wrapper."""

    def test_ok(self):
        result = Result.ok([1, 2])
        assert result.success
        assert result.unwrap() == [1, 2]
        assert result.to_dict() == {"success": True, "data": [1, 2]}

    def test_fail(self):
        result: Result[int] = Result.fail(ErrorCode.VALIDATION_ERROR, "bad input")
        assert not result.success
        assert result.unwrap_or(7) == 7
        with pytest.raises(ValueError):
            result.unwrap()

    def test_from_domain_exception(self):
        result = Result.from_exception(NotASolutionException((1, 1, 1), "T~ = -11"))
        payload = result.to_dict()
        assert payload["error_code"] == ErrorCode.NOT_A_SOLUTION.value
        assert payload["details"]["reason"] == "T~ = -11"

    def test_from_unexpected_exception(self):
        result = Result.from_exception(KeyError("x"))
        assert result.error_code == ErrorCode.INTERNAL_ERROR
        assert result.details == {"exception_type": "KeyError"}

    def test_exception_to_dict(self):
        payload = ValidationException("bound", "must be positive").to_dict()
        assert payload["error_code"] == ErrorCode.VALIDATION_ERROR.value
        assert payload["details"] == {"field": "bound", "reason": "must be positive"}


# ============================================================================
# Settings and Logging Tests
# ============================================================================


class TestSettings:
    """Test configuration defaults and environment overrides."""

    def test_defaults(self, monkeypatch):
        for name in ("ORACLE_WORKERS", "ENVIRONMENT", "LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)
        config = Settings(_env_file=None)
        assert config.oracle_workers == 1
        assert not config.parallel_enabled
        assert config.log_level == "WARNING"
        assert config.is_development

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("ORACLE_WORKERS", "4")
        monkeypatch.setenv("ENVIRONMENT", "production")
        config = Settings(_env_file=None)
        assert config.oracle_workers == 4
        assert config.parallel_enabled
        assert not config.is_development


class TestStructuredLogger:
    """Test correlation ids."""

    def test_correlation_id_lifecycle(self):
        cid = set_correlation_id()
        assert get_correlation_id() == cid
        clear_correlation_id()
        assert get_correlation_id() is None

    def test_explicit_correlation_id(self):
        assert set_correlation_id("run-1") == "run-1"
        clear_correlation_id()

    def test_log_search_does_not_raise(self):
        slog = get_structured_logger("tests")
        slog.log_search("descend_to_root", steps=3, found=False, error="none")
        slog.info("message", value=Fraction(1, 2))
