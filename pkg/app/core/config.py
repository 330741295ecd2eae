"""
Application configuration using Pydantic Settings.
Loads configuration from environment variables.
"""
from typing import Annotated, List, Optional
import json
from pathlib import Path

from pydantic import Field, field_validator, BeforeValidator
from pydantic_settings import BaseSettings, SettingsConfigDict


def parse_int_list(v: str | list[int]) -> list[int]:
    """
    Parse list of integers from string or list.

    Supports both comma-separated strings and JSON arrays.
    This allows flexible configuration in .env files.

    Args:
        v: String or list value

    Returns:
        List of integers

    Examples:
        "20,40,60" → [20, 40, 60]
        [20, 40] → [20, 40]
        '[20,40]' → [20, 40]
    """
    if isinstance(v, str):
        v = v.strip()

        # Try to parse as JSON array first
        if v.startswith('[') and v.endswith(']'):
            try:
                return [int(item) for item in json.loads(v)]
            except (json.JSONDecodeError, TypeError, ValueError):
                pass

        return [int(item.strip()) for item in v.split(",") if item.strip()]

    return v


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application
    environment: str = Field(default="development", description="Environment name")
    debug: bool = Field(default=False, description="Debug mode")
    log_level: str = Field(default="INFO", description="Logging level")

    # Output
    output_dir: Optional[Path] = Field(
        default=None,
        description="Directory that relative --output paths are resolved against"
    )

    # Reproducibility
    default_seed: int = Field(default=0, ge=0, description="Seed used when --seed is omitted")

    # Oracles and guards
    brute_force_max_n: int = Field(
        default=10,
        ge=1,
        le=12,
        description="Largest n enumerated over all n! permutations"
    )
    enumeration_cap: int = Field(
        default=1_000_000,
        ge=1,
        description="Maximum number of building sequences materialized at once"
    )
    row_sum_max_n: int = Field(
        default=100,
        ge=0,
        description="Largest n whose row sum is checked against n! by verify"
    )

    # Markov chain experiments
    tv_epsilon: float = Field(default=0.05, gt=0, lt=1, description="Mixing threshold")
    tv_every: int = Field(default=50, ge=1, description="Default TV report spacing")
    workers: int = Field(default=1, ge=1, description="Default number of parallel workers")
    mixing_first_horizon: int = Field(
        default=1_000,
        ge=1,
        description="First horizon tried by the mixing-time search"
    )
    mixing_max_steps: int = Field(
        default=200_000,
        ge=1,
        description="Largest horizon the mixing-time search doubles up to"
    )

    # Scaling report
    scaling_widths: Annotated[
        List[int],
        BeforeValidator(parse_int_list)
    ] = Field(
        default=[20, 40, 60, 80, 100],
        description="Widths timed by verify --scaling"
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is uppercase."""
        return v.upper()

    @property
    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.environment.lower() == "production"

    @property
    def is_development(self) -> bool:
        """Check if running in development environment."""
        return self.environment.lower() == "development"

    @property
    def is_testing(self) -> bool:
        """Check if running in testing environment."""
        return self.environment.lower() == "testing"


# Global settings instance
settings = Settings()
