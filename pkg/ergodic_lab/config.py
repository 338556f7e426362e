"""Typed settings loaded from environment variables."""

from __future__ import annotations

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Numerical tolerances, budgets and CLI defaults, loaded from .env / environment."""

    # General
    app_env: str = Field(default="dev", alias="ERGODIC_ENV")
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")

    # Model validation
    prob_sum_tol: float = Field(default=1e-12, alias="PROB_SUM_TOL")
    stationarity_tol: float = Field(default=1e-10, alias="STATIONARITY_TOL")

    # Stationary distribution solver
    stationary_residual_tol: float = Field(default=1e-12, alias="STATIONARY_RESIDUAL_TOL")
    power_iteration_tol: float = Field(default=1e-13, alias="POWER_ITERATION_TOL")
    power_iteration_max_iter: int = Field(default=1_000_000, alias="POWER_ITERATION_MAX_ITER")
    dense_solve_max_states: int = Field(default=8, alias="DENSE_SOLVE_MAX_STATES")

    # Enumeration budgets
    max_block_entropy_n: int = Field(default=26, alias="MAX_BLOCK_ENTROPY_N")
    max_invariance_depth: int = Field(default=22, alias="MAX_INVARIANCE_DEPTH")

    # Entropy sums skip cylinders below 2**entropy_log_floor
    entropy_log_floor: float = Field(default=-1000.0, alias="ENTROPY_LOG_FLOOR")

    # Conditional information profiles
    stability_tol: float = Field(default=1e-6, alias="FK_STABILITY_TOL")
    stability_window: int = Field(default=16, alias="FK_STABILITY_WINDOW")
    bracket_depth: int = Field(default=12, alias="ENTROPY_BRACKET_DEPTH")

    # CLI defaults
    grid_start: int = Field(default=256, alias="GRID_START")
    grid_factor: int = Field(default=2, alias="GRID_FACTOR")
    grid_count: int = Field(default=10, alias="GRID_COUNT")
    default_seed: int = Field(default=0, alias="DEFAULT_SEED")

    # Summaries
    summary_tolerance: float = Field(default=0.05, alias="SUMMARY_TOLERANCE")
    summary_pass_fraction: float = Field(default=0.95, alias="SUMMARY_PASS_FRACTION")

    model_config = {"env_file": ".env", "env_file_encoding": "utf-8", "extra": "ignore"}


def get_settings() -> Settings:
    """Accessor for settings; re-reads the environment on every call."""
    return Settings()
