"""Middlewares package."""

from trapbound.middlewares.errors import (
    EXIT_INEQUALITY_VIOLATION,
    EXIT_INPUT_ERROR,
    ErrorMiddleware,
    UsageExitCommand,
    UsageExitGroup,
)

__all__ = ["EXIT_INEQUALITY_VIOLATION", "EXIT_INPUT_ERROR", "ErrorMiddleware", "UsageExitCommand", "UsageExitGroup"]
