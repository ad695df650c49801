"""Configuration module for vergen.

This module handles configuration loading and management: budgets,
parallelism and the random seed are read from environment variables and can
be overridden per run.
"""

import logging
import os
from typing import Any, Optional

from pydantic import ValidationError

from .models import RunConfig

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

DEFAULTS = {
    "VERGEN_THREADS": 1,
    "VERGEN_CELL_BUDGET": 10**6,
    "VERGEN_POINT_BUDGET": 10**6,
    "VERGEN_RETRY_BUDGET": 16,
    "VERGEN_ORDER_BOUND": 24,
    "VERGEN_SEED": 0,
}


class Config:
    """Configuration manager for vergen.

    Values are read from the environment on first access and cached.
    """

    def __init__(self) -> None:
        """Initialize the configuration manager."""
        self._values: dict[str, int] = {}
        self.log_level = os.environ.get("LOG_LEVEL", "INFO")

    def _int_env(self, name: str) -> int:
        """Read a positive integer (nonnegative for the seed) from the environment.

        Malformed values are logged and replaced by the default.
        """
        if name not in self._values:
            default = DEFAULTS[name]
            raw: Optional[str] = os.environ.get(name)
            value = default
            if raw is not None:
                try:
                    value = int(raw)
                    if value < 0 or (value == 0 and name != "VERGEN_SEED"):
                        raise ValueError("out of range")
                except ValueError:
                    logger.warning(f"Ignoring invalid {name}={raw!r}; using {default}")
                    value = default
            self._values[name] = value
        return self._values[name]

    @property
    def threads(self) -> int:
        """Worker processes (VERGEN_THREADS)."""
        return self._int_env("VERGEN_THREADS")

    @property
    def cell_budget(self) -> int:
        """Cell limit for region computations (VERGEN_CELL_BUDGET)."""
        return self._int_env("VERGEN_CELL_BUDGET")

    @property
    def point_budget(self) -> int:
        """Point limit for series clouds (VERGEN_POINT_BUDGET)."""
        return self._int_env("VERGEN_POINT_BUDGET")

    @property
    def retry_budget(self) -> int:
        """Refinement rounds for randomized constructions (VERGEN_RETRY_BUDGET)."""
        return self._int_env("VERGEN_RETRY_BUDGET")

    @property
    def order_bound(self) -> int:
        """Largest order tried for finite-order maps (VERGEN_ORDER_BOUND)."""
        return self._int_env("VERGEN_ORDER_BOUND")

    @property
    def seed(self) -> int:
        """Seed for random instances (VERGEN_SEED)."""
        return self._int_env("VERGEN_SEED")

    def run_config(self, **overrides: Any) -> RunConfig:
        """Merge explicit settings over the environment defaults.

        Args:
            **overrides: RunConfig fields; None values are ignored

        Returns:
            The validated run configuration

        Raises:
            ValidationError: If a setting is out of range
        """
        values: dict[str, Any] = {
            "seed": self.seed,
            "cell_budget": self.cell_budget,
            "point_budget": self.point_budget,
            "retry_budget": self.retry_budget,
            "order_bound": self.order_bound,
            "parallelism": self.threads,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return RunConfig(**values)
        except ValidationError as e:
            logger.error(f"Invalid run configuration: {e!s}")
            raise

    def reset(self) -> None:
        """Forget cached values so the environment is read again."""
        self._values.clear()
        self.log_level = os.environ.get("LOG_LEVEL", "INFO")


# Singleton instance
config = Config()
