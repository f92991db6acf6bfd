"""
Settings - Environment configuration for the command-line tool
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from errors import ParameterError

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Values read from RMT_* environment variables."""

    threads: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    default_seed: int = Field(default=20240607, ge=0)

    @field_validator("log_level", mode="before")
    @classmethod
    def _normalize_level(cls, value: str) -> str:
        level = str(value).upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {LOG_LEVELS}, got '{value}'")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from the environment.

        Raises:
            ParameterError: a variable is set to an invalid value
        """
        raw = {
            "threads": os.getenv("RMT_THREADS", "1"),
            "log_level": os.getenv("RMT_LOG_LEVEL", "INFO"),
            "default_seed": os.getenv("RMT_DEFAULT_SEED", "20240607"),
        }
        try:
            return cls(**raw)
        except ValidationError as e:
            raise ParameterError(f"invalid RMT_* environment variable: {e}") from e


# Singleton instance
_settings_instance: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create the singleton settings instance."""
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings.from_env()
    return _settings_instance
