"""Error middleware that turns domain errors into CLI exit codes."""

import functools
import logging
from typing import Any, Callable, NoReturn

import click

from trapbound.services.errors import InequalityViolation, TrapboundError

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 1
EXIT_INEQUALITY_VIOLATION = 2


class ErrorMiddleware:
    """
    Wraps a command callback so that no domain error escapes as a traceback.

    An InequalityViolation exits with code 2, any other TrapboundError or a
    ValueError/OSError from bad input exits with code 1. The error is logged
    and printed as a single `Error: ...` line on stderr.
    """

    def __call__(self, handler: Callable[..., Any]) -> Callable[..., Any]:
        @functools.wraps(handler)
        def wrapped(*args: Any, **kwargs: Any) -> Any:
            try:
                return handler(*args, **kwargs)
            except InequalityViolation as e:
                self._fail(handler, e.message, EXIT_INEQUALITY_VIOLATION)
            except TrapboundError as e:
                self._fail(handler, e.message, EXIT_INPUT_ERROR)
            except (ValueError, OSError) as e:
                self._fail(handler, str(e), EXIT_INPUT_ERROR)

        return wrapped

    @staticmethod
    def _fail(handler: Callable[..., Any], message: str, code: int) -> NoReturn:
        logger.error(f"{handler.__name__} failed: {message}")
        click.echo(f"Error: {message}", err=True)
        raise click.exceptions.Exit(code)


class _UsageExitMixin:
    """Report click usage errors with the input-error exit code instead of click's 2."""

    def make_context(self, info_name: str | None, args: list[str], parent: click.Context | None = None, **extra: Any) -> click.Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)  # type: ignore[misc]
        except click.UsageError as e:
            e.exit_code = EXIT_INPUT_ERROR
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)  # type: ignore[misc]
        except click.UsageError as e:
            e.exit_code = EXIT_INPUT_ERROR
            raise


class UsageExitCommand(_UsageExitMixin, click.Command):
    pass


class UsageExitGroup(_UsageExitMixin, click.Group):
    command_class = UsageExitCommand
