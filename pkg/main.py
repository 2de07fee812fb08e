#!/usr/bin/env python3
"""
trapbound

Two-sided bounds for the trapezoid rule error of non-negative integrands,
the mean-value point behind them, and their special-means applications.

Usage:
    python main.py bounds --fn "1/s^2" --a 1 --b 2           # Envelope report
    python main.py meanpoint --fn "exp(s)" --a 0 --b 1       # Mean-value point
    python main.py means --alpha 1 --beta 2                  # Special means
    TRAPBOUND_JOBS=4 python main.py sweep --corpus paper     # Corpus sweep as CSV
"""

import logging

from dotenv import load_dotenv

from trapbound.config import configure_logging, get_config
from trapbound.handlers import cli

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


def main() -> None:
    """Main entry point."""
    config = get_config()
    configure_logging(config)
    logger.debug(f"Configuration: {config}")
    cli(obj=config)


if __name__ == "__main__":
    main()
