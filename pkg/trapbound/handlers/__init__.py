"""Handlers package."""

from trapbound.handlers.commands import cli

__all__ = ["cli"]
