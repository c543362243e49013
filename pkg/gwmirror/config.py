import logging
import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 8
DEFAULT_QUINTIC_ORDER = 6
DEFAULT_SEED = 20030
DEFAULT_TRIALS = 3


def _env_int(name: str, minimum: int = 0) -> Optional[int]:
    """Integer environment override; malformed values are logged and ignored."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"ignoring {name}={raw!r}: not an integer")
        return None
    if value < minimum:
        logger.warning(f"ignoring {name}={raw!r}: must be >= {minimum}")
        return None
    return value


def default_order(command: str) -> int:
    """Truncation order used when --order is absent; GW_MIRROR_ORDER overrides it for every command."""
    override = _env_int("GW_MIRROR_ORDER")
    if override is not None:
        return override
    return DEFAULT_QUINTIC_ORDER if command == "quintic" else DEFAULT_ORDER


def default_seed() -> int:
    seed = _env_int("GW_MIRROR_SEED")
    return DEFAULT_SEED if seed is None else seed


def log_level(default: str = "WARNING") -> int:
    name = os.getenv("GW_MIRROR_LOG_LEVEL", default).upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        logger.warning(f"unknown log level {name!r}, using {default}")
        return logging.getLevelName(default)
    return level
