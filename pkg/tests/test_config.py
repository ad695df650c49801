"""Unit tests for the configuration module."""

import os
from unittest import mock

import pytest
from pydantic import ValidationError

from src.vergen.config import DEFAULTS, config


def test_defaults():
    assert config.threads == 1
    assert config.seed == 0
    assert config.cell_budget == DEFAULTS["VERGEN_CELL_BUDGET"]
    assert config.order_bound == DEFAULTS["VERGEN_ORDER_BOUND"]


def test_environment_overrides():
    # Arrange
    with mock.patch.dict(os.environ, {"VERGEN_CELL_BUDGET": "50", "VERGEN_SEED": "42"}):
        config.reset()

        # Act
        run = config.run_config()

    # Assert
    assert run.cell_budget == 50
    assert run.seed == 42


def test_invalid_environment_values_fall_back(caplog):
    # Arrange
    with mock.patch.dict(os.environ, {"VERGEN_THREADS": "zero", "VERGEN_RETRY_BUDGET": "0"}):
        config.reset()

        # Act
        threads = config.threads
        retries = config.retry_budget

    # Assert
    assert threads == DEFAULTS["VERGEN_THREADS"]
    assert retries == DEFAULTS["VERGEN_RETRY_BUDGET"]
    assert "Ignoring invalid VERGEN_THREADS" in caplog.text


def test_run_config_overrides():
    # Act
    run = config.run_config(seed=7, cell_budget=None, parallelism=3)

    # Assert
    assert run.seed == 7
    assert run.cell_budget == DEFAULTS["VERGEN_CELL_BUDGET"]
    assert run.parallelism == 3


def test_run_config_rejects_invalid_values():
    with pytest.raises(ValidationError):
        config.run_config(parallelism=0)
