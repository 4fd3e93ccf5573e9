"""cluster-index-cli configuration module."""

import logging
from typing import Any

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from rich.console import Console
from rich.logging import RichHandler


class Settings(BaseSettings):
    """Application settings loaded from environment variables and .env file."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        extra="ignore",
    )

    # Oracle windows (bound on |k| for regular points)
    SUITE_WINDOW: int = 8
    SAMPLE_WINDOW: int = 4

    # Sampling
    SAMPLE_SIZE: int = 200
    SEED: int = 1729

    # Checked builds re-verify approximation and mutation results
    CHECKED: bool = True

    # SVG rendering
    SVG_SIZE: int = 480
    SVG_STROKE_WIDTH: float = 1.5
    SVG_LOGISTIC_SCALE: float = 1.0
    SVG_POINT_LABELS: bool = True

    # Output
    NO_COLOR: bool = False

    # Logging
    LOG_LEVEL: str = "INFO"

    @field_validator("NO_COLOR", mode="before")
    @classmethod
    def any_value_disables_color(cls, value: Any) -> Any:
        """Any value other than an explicit off switch turns colour off."""
        if isinstance(value, str):
            return value.strip().lower() not in {"", "0", "false", "no", "off"}
        return value


# Global settings instance
settings = Settings()


def configure_logging(level: str | None = None) -> None:
    """Route library logging through rich at the configured level."""
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(
                console=Console(stderr=True, no_color=settings.NO_COLOR),
                rich_tracebacks=True,
                show_path=False,
            )
        ],
        force=True,
    )
