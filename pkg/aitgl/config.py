"""
Configuration settings for the aitgl workbench
"""

import os
from pathlib import Path
from typing import Dict, Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Workbench settings with environment variable support (prefix AITGL_)"""

    model_config = SettingsConfigDict(
        env_prefix="AITGL_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Output Settings
    trace_dir: str = Field(default="traces", description="Directory for JSON-lines traces")

    # Logging Configuration
    log_level: str = Field(default="INFO")
    log_file: str = Field(default="logs/aitgl.log")
    log_rotation: str = Field(default="1 day")
    log_retention: str = Field(default="30 days")

    # Experiment Defaults
    default_budget: int = Field(default=10_000, ge=1)
    default_seed: int = Field(default=0)

    # Desk-scale limits
    max_w: int = Field(default=16, ge=1)
    max_depth: int = Field(default=24, ge=1)
    max_horizon: int = Field(default=1_000_000, ge=1)
    max_jobs: int = Field(default=8, ge=1)
    max_program_len: int = Field(default=16, ge=1, description="Longest dovetailed program, for --k and blind:F")


# Global settings instance
settings = Settings()


def get_trace_dir(override: Optional[str] = None) -> Path:
    """Trace directory; AITGL_TRACE_DIR wins over a command-line --out"""
    env_dir = os.getenv("AITGL_TRACE_DIR")
    return Path(env_dir or override or settings.trace_dir)


def get_limits() -> Dict[str, int]:
    """Bounds that keep runs desk-scale"""
    return {
        "w": settings.max_w,
        "depth": settings.max_depth,
        "horizon": settings.max_horizon,
        "jobs": settings.max_jobs,
        "k": settings.max_program_len,
        "f_m": settings.max_program_len,
    }
