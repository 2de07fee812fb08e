"""Configuration from environment variables (optionally loaded from .env)."""

import logging
import math
import os
import sys

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _parse(name: str, default: str, cast: type, minimum: float, strict: bool = False) -> float | int:
    raw = os.getenv(name, default).strip() or default
    try:
        value = cast(raw)
    except ValueError:
        logger.error(f"Invalid {name}: {raw!r} is not a valid {cast.__name__}")
        sys.exit(1)

    if not math.isfinite(value):
        logger.error(f"Invalid {name}: {raw!r} must be finite")
        sys.exit(1)

    if (strict and value <= minimum) or (not strict and value < minimum):
        relation = ">" if strict else ">="
        logger.error(f"Invalid {name}: {raw!r}, must be {relation} {minimum}")
        sys.exit(1)
    return value


def get_config() -> dict:
    """Load and validate configuration from environment variables."""
    config = {
        "tol": _parse("TRAPBOUND_TOL", "1e-10", float, 0.0, strict=True),
        "solver_tol": _parse("TRAPBOUND_SOLVER_TOL", "1e-10", float, 0.0, strict=True),
        "grid_n": _parse("TRAPBOUND_GRID", "1024", int, 2),
        "jobs": _parse("TRAPBOUND_JOBS", "1", int, 1),
        "log_level": os.getenv("LOG_LEVEL", "WARNING").upper(),
        "log_file": os.getenv("LOG_FILE", ""),
    }

    if not isinstance(logging.getLevelName(config["log_level"]), int):
        logger.error(f"Invalid LOG_LEVEL: {config['log_level']!r}")
        sys.exit(1)

    return config


def configure_logging(config: dict) -> None:
    """Log to stderr (stdout carries results), plus LOG_FILE when set."""
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config["log_file"]:
        handlers.append(logging.FileHandler(config["log_file"]))

    logging.basicConfig(
        level=getattr(logging, config["log_level"], logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
