"""Tests for the self-test service.

Tests cover:
- Module filtering and reproducible sampling
- Failure reporting for properties that raise or fail
- A full run over every registered property
"""

import random

import pytest
from loguru import logger

from src.services import selftest
from src.services.selftest import PROPERTIES, random_quintuple, random_word, run_selftest


class TestSampling:
    """Test the seeded samplers."""

    def test_same_seed_same_samples(self):
        first = random.Random("7:x")
        second = random.Random("7:x")
        assert random_quintuple(first) == random_quintuple(second)
        assert random_word(first, 10) == random_word(second, 10)

    def test_word_length_bound(self):
        rng = random.Random(3)
        assert all(len(random_word(rng, 4).letters) <= 4 for _ in range(50))


class TestRunSelftest:
    """Test running and reporting."""

    def test_module_filter(self):
        report = run_selftest(modules=["exchange_core"])
        assert report.passed
        assert {result.module for result in report.results} == {"exchange_core"}
        assert len(report.results) == sum(1 for module, _, _ in PROPERTIES if module == "exchange_core")

    def test_unknown_module_runs_nothing(self):
        report = run_selftest(modules=["nope"])
        assert report.results == []
        assert report.passed

    @pytest.mark.parametrize("module", ["quintuple_dynamics", "conserved_map"])
    def test_algebraic_modules_pass(self, module):
        report = run_selftest(seed=11, modules=[module])
        assert report.passed, report.failures

    def test_failing_and_raising_properties_are_reported(self, monkeypatch):
        def broken(rng):
            raise ZeroDivisionError("boom")

        monkeypatch.setattr(
            selftest,
            "PROPERTIES",
            [("demo", "fails", lambda rng: (False, "bad value")), ("demo", "raises", broken)],
        )
        report = run_selftest()
        assert not report.passed
        assert [r.detail for r in report.failures] == ["bad value", "ZeroDivisionError: boom"]
        wire = report.to_wire()
        assert wire["passed"] is False
        assert wire["results"][0]["name"] == "fails"

    def test_m_positive_property(self):
        assert selftest._m_positive(random.Random(5)) == (True, "")

    def test_summary_is_logged(self):
        messages = []
        sink = logger.add(messages.append, level="INFO")
        try:
            run_selftest(modules=["exchange_core"])
        finally:
            logger.remove(sink)
        assert any("Self-test finished" in str(m) for m in messages)

    @pytest.mark.slow
    def test_full_run_passes(self):
        report = run_selftest(seed=0)
        assert report.passed, [(r.module, r.name, r.detail) for r in report.failures]
        assert len(report.results) == len(PROPERTIES)
