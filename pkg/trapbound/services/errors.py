"""Exception hierarchy shared by every trapbound service."""

from typing import Any


class TrapboundError(Exception):
    """Base exception for trapbound errors."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class ExprSyntaxError(TrapboundError):
    """Raised when an expression string does not match the grammar."""

    def __init__(self, message: str, offset: int, expected: str | None = None):
        self.offset = offset
        self.expected = expected
        super().__init__(f"{message} at offset {offset}")


class ExprDomainError(TrapboundError):
    """Raised when an expression is evaluated outside its mathematical domain."""

    def __init__(self, message: str, node: Any = None, s: float | None = None):
        self.node = node
        self.s = s
        super().__init__(message)


class DifferentiationError(TrapboundError):
    """Raised when a node has no symbolic derivative (e.g. abs)."""

    def __init__(self, message: str, node: Any = None):
        self.node = node
        super().__init__(message)


class ArgumentError(TrapboundError, ValueError):
    """Raised when an argument violates a documented constraint."""

    def __init__(self, message: str, constraint: str | None = None):
        self.constraint = constraint
        super().__init__(message)


class PreconditionError(TrapboundError):
    """Raised when the integrand is negative somewhere on the interval."""

    def __init__(self, message: str, s: float | None = None, value: float | None = None):
        self.s = s
        self.value = value
        super().__init__(message)


class ConvergenceError(TrapboundError):
    """Raised when adaptive quadrature hits its recursion depth cap."""

    def __init__(self, message: str, best_estimate: float, evals: int):
        self.best_estimate = best_estimate
        self.evals = evals
        super().__init__(message)


class NoRootError(TrapboundError):
    """Raised when the mean-value scan finds neither a sign change nor a degenerate case."""

    def __init__(self, message: str, min_abs_g: float):
        self.min_abs_g = min_abs_g
        super().__init__(message)


class InequalityViolation(TrapboundError):
    """Raised when an inequality that must hold is violated."""

    def __init__(self, message: str, failed_checks: list[str] | None = None):
        self.failed_checks = failed_checks or []
        super().__init__(message)


class CorpusError(TrapboundError):
    """Raised when a sweep corpus cannot be read or is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"{message} (line {line})")
