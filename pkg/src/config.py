"""Runtime configuration and logging setup.

Settings are read from environment variables, optionally supplied through a
``.env`` file in the working directory. Every guarded operation also accepts
an explicit override, so none of the variables is required.
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class Settings:
    alpha_max_n: int = 48
    oracle_max_n: int = 16
    subset_max_n: int = 20
    desk_max_n: int = 24
    cycle_cap: int = 1_000_000
    matching_cap: int = 100_000
    sachs_cap: int = 100_000
    log_level: str = "INFO"
    log_path: Optional[str] = None


def get_settings() -> Settings:
    """Build the settings from the current environment."""

    return Settings(
        alpha_max_n=_int_env("BAB_ALPHA_MAX_N", 48),
        oracle_max_n=_int_env("BAB_ORACLE_MAX_N", 16),
        subset_max_n=_int_env("BAB_SUBSET_MAX_N", 20),
        desk_max_n=_int_env("BAB_DESK_MAX_N", 24),
        cycle_cap=_int_env("BAB_CYCLE_CAP", 1_000_000),
        matching_cap=_int_env("BAB_MATCHING_CAP", 100_000),
        sachs_cap=_int_env("BAB_SACHS_CAP", 100_000),
        log_level=os.getenv("BAB_LOG_LEVEL", "INFO"),
        log_path=os.getenv("BAB_LOG_PATH") or None,
    )


def configure_logging(level: Optional[str] = None, log_path: Optional[str] = None) -> None:
    """Install the package log format; optionally mirror records to a file."""

    settings = get_settings()
    level = (level or settings.log_level).upper()
    log_path = log_path or settings.log_path
    handlers = [logging.StreamHandler()]
    if log_path:
        directory = os.path.dirname(log_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)
