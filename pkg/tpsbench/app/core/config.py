"""
Configuration settings for the TPS Workbench.

This module handles tooling configuration using Pydantic settings.
Algebra parameters (a, b, n, generators) are never read from here.
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="TPSBENCH_",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "TPS Workbench"
    api_version: str = "v1"
    tool_version: str = "1.0.0"
    debug: bool = False

    # Logging
    log_level: str = "INFO"

    # Reports
    report_indent: int = 2
    max_witnesses: int = 25

    # Sampled checks
    random_seed: int = 20240517
    default_pair_samples: int = 100


settings = Settings()
