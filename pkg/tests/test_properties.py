"""Unit tests for the seeded property suites."""

import pytest

from src.vergen.errors import ParameterRangeError
from src.vergen.properties import SUITES, run_suite, run_suites

SLOW_SUITES = {"zonotope"}


@pytest.mark.parametrize(
    "suite",
    [pytest.param(name, marks=pytest.mark.slow) if name in SLOW_SUITES else name for name in SUITES],
)
def test_run_suite_passes(suite):
    # Act
    report = run_suite(suite, 2, seed=3)

    # Assert
    assert report.passed, [f.detail for f in report.failures]
    assert report.failures == []
    assert [r.case for r in report.results] == [0, 1]


def test_segmono_suite_reports_defect_volumes():
    # Act
    report = run_suite("segmono", 1, seed=5)

    # Assert
    assert report.passed
    assert report.results[0].suite == "segmono"
    assert "->" in report.results[0].detail or report.results[0].detail.startswith("skipped")


def test_run_suite_is_reproducible():
    assert run_suite("caratheodory", 2, seed=9) == run_suite("caratheodory", 2, seed=9)


def test_run_suites_expands_all(monkeypatch):
    # Arrange
    seen = []
    monkeypatch.setattr(
        "src.vergen.properties.run_suite",
        lambda name, cases, seed, parallelism: seen.append(name),
    )

    # Act
    run_suites(["all"], 1)

    # Assert
    assert seen == list(SUITES)
    assert "segmono" in seen


def test_run_suite_rejects_bad_input():
    with pytest.raises(ParameterRangeError):
        run_suite("nonexistent", 2)
    with pytest.raises(ParameterRangeError):
        run_suite("caratheodory", 0)
