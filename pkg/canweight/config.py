"""Runtime limits and defaults for canweight, read from CANWEIGHT_* variables and .env."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from environment variables (prefix ``CANWEIGHT_``)."""

    model_config = SettingsConfigDict(
        env_prefix="CANWEIGHT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",  # .env may hold unrelated variables
    )

    # Enumeration guards
    max_cells: int = Field(default=2_000_000, ge=1)
    max_exponent: int = Field(default=1_000_000, ge=1)

    # Coordinate-sum bound for the f-minimal candidate search
    candidate_sum_bound: int = Field(default=12, ge=1)

    # Batch mode
    batch_workers: int = Field(default=1, ge=1)

    log_level: str = "WARNING"


@lru_cache
def get_settings() -> Settings:
    """Process-wide settings; call ``get_settings.cache_clear()`` after changing the environment."""
    return Settings()
