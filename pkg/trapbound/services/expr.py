"""Expressions in one variable `s`: parsing, printing, evaluation and derivatives.

Grammar (whitespace is insignificant):

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" unary)?
    primary := NUMBER | "s" | FUNC "(" expr ")" | "(" expr ")"
    FUNC    := "ln" | "exp" | "sin" | "cos" | "sqrt" | "abs"

`^` binds tighter than unary minus (`-s^2` is `-(s^2)`) and is right-associative.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Callable, Literal

from trapbound.services.errors import DifferentiationError, ExprDomainError, ExprSyntaxError

if TYPE_CHECKING:
    from trapbound.services.quad import Interval

logger = logging.getLogger(__name__)

UnaryOp = Literal["neg", "ln", "exp", "sin", "cos", "sqrt", "abs"]
BinaryOp = Literal["+", "-", "*", "/", "^"]

VALID_UNARY_OPS: set[str] = {"neg", "ln", "exp", "sin", "cos", "sqrt", "abs"}
VALID_BINARY_OPS: set[str] = {"+", "-", "*", "/", "^"}
FUNCTION_NAMES: set[str] = VALID_UNARY_OPS - {"neg"}
VARIABLE_NAME = "s"


# ============================================================================
# AST
# ============================================================================


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Variable:
    """The symbol `s`."""


@dataclass(frozen=True)
class Unary:
    op: UnaryOp
    child: Expr

    def __post_init__(self) -> None:
        if self.op not in VALID_UNARY_OPS:
            raise ValueError(f"Invalid unary operator: {self.op}")
        if not isinstance(self.child, (Constant, Variable, Unary, Binary)):
            raise TypeError(f"Unary child must be an expression, got {type(self.child).__name__}")


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: Expr
    right: Expr

    def __post_init__(self) -> None:
        if self.op not in VALID_BINARY_OPS:
            raise ValueError(f"Invalid binary operator: {self.op}")
        for operand in (self.left, self.right):
            if not isinstance(operand, (Constant, Variable, Unary, Binary)):
                raise TypeError(f"Binary operand must be an expression, got {type(operand).__name__}")


Expr = Constant | Variable | Unary | Binary


def contains_variable(e: Expr) -> bool:
    """Return True if `s` occurs anywhere in the tree."""
    if isinstance(e, Variable):
        return True
    if isinstance(e, Constant):
        return False
    if isinstance(e, Unary):
        return contains_variable(e.child)
    return contains_variable(e.left) or contains_variable(e.right)


# ============================================================================
# PARSER
# ============================================================================

_TOKEN_RE = re.compile(
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^()])"
)

_PRIMARY_EXPECTED = "number, 's', function or '('"


@dataclass(frozen=True)
class _Token:
    kind: Literal["number", "name", "op", "end"]
    text: str
    offset: int


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ExprSyntaxError(
                f"Unexpected character {text[pos]!r}",
                _byte_offset(text, pos),
                expected=_PRIMARY_EXPECTED,
            )
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(), _byte_offset(text, pos)))  # type: ignore[arg-type]
        pos = match.end()
    tokens.append(_Token("end", "", _byte_offset(text, len(text))))
    return tokens


class _Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _error(self, expected: str) -> ExprSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ExprSyntaxError(f"Unexpected {found}, expected {expected}", token.offset, expected)

    def _expect_op(self, op: str) -> None:
        if self.current.kind == "op" and self.current.text == op:
            self._advance()
            return
        raise self._error(repr(op))

    def parse(self) -> Expr:
        tree = self.expr()
        if self.current.kind != "end":
            raise self._error("operator or end of input")
        return tree

    def expr(self) -> Expr:
        left = self.term()
        while self.current.kind == "op" and self.current.text in ("+", "-"):
            op = self._advance().text
            left = Binary(op, left, self.term())  # type: ignore[arg-type]
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.current.kind == "op" and self.current.text in ("*", "/"):
            op = self._advance().text
            left = Binary(op, left, self.unary())  # type: ignore[arg-type]
        return left

    def unary(self) -> Expr:
        if self.current.kind == "op" and self.current.text == "-":
            self._advance()
            return Unary("neg", self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.current.kind == "op" and self.current.text == "^":
            self._advance()
            # Exponent is a unary, so 2^3^2 recurses to the right
            return Binary("^", base, self.unary())
        return base

    def primary(self) -> Expr:
        token = self.current

        if token.kind == "number":
            self._advance()
            return Constant(float(token.text))

        if token.kind == "name":
            if token.text == VARIABLE_NAME:
                self._advance()
                return Variable()
            if token.text in FUNCTION_NAMES:
                self._advance()
                self._expect_op("(")
                child = self.expr()
                self._expect_op(")")
                return Unary(token.text, child)  # type: ignore[arg-type]
            raise ExprSyntaxError(
                f"Unknown identifier {token.text!r}",
                token.offset,
                expected=f"'{VARIABLE_NAME}' or one of {', '.join(sorted(FUNCTION_NAMES))}",
            )

        if token.kind == "op" and token.text == "(":
            self._advance()
            inner = self.expr()
            self._expect_op(")")
            return inner

        raise self._error(_PRIMARY_EXPECTED)


def parse(text: str) -> Expr:
    """
    Parse an expression string into an AST.

    Args:
        text: Expression in the variable `s`, e.g. "1/s^2" or "ln(s)"

    Returns:
        The expression tree

    Raises:
        ExprSyntaxError: With the byte offset of the offending token
    """
    return _Parser(text).parse()


# ============================================================================
# PRINTER
# ============================================================================

_ATOM = 5


def _precedence(e: Expr) -> int:
    if isinstance(e, Binary):
        return {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return 3
    return _ATOM


def _format_number(value: float) -> str:
    if math.isfinite(value) and value.is_integer() and abs(value) < 1e16:
        text = str(int(value))
    else:
        text = repr(float(value))
    return f"({text})" if value < 0 or text.startswith("-") else text


def to_text(e: Expr) -> str:
    """Print an expression with the minimum parentheses needed to re-parse it."""

    def wrap(child: Expr, need: int) -> str:
        text = to_text(child)
        return f"({text})" if _precedence(child) < need else text

    if isinstance(e, Constant):
        return _format_number(e.value)
    if isinstance(e, Variable):
        return VARIABLE_NAME
    if isinstance(e, Unary):
        if e.op == "neg":
            return f"-{wrap(e.child, 3)}"
        return f"{e.op}({to_text(e.child)})"

    if e.op in ("+", "-"):
        return f"{wrap(e.left, 1)} {e.op} {wrap(e.right, 2)}"
    if e.op in ("*", "/"):
        return f"{wrap(e.left, 2)}{e.op}{wrap(e.right, 3)}"
    return f"{wrap(e.left, _ATOM)}^{wrap(e.right, 3)}"


# ============================================================================
# EVALUATION
# ============================================================================

Compiled = Callable[[float], float]


def _domain_error(reason: str, node: Expr, s: float) -> ExprDomainError:
    return ExprDomainError(f"{reason} in '{to_text(node)}' at s={s!r}", node, s)


def _guard_overflow(fn: Callable[[float], float], node: Expr) -> Compiled:
    def guarded(s: float) -> float:
        try:
            return fn(s)
        except OverflowError:
            raise _domain_error("Overflow", node, s) from None

    return guarded


def compile_expr(e: Expr) -> Compiled:
    """
    Compile an expression into a closure tree for fast repeated evaluation.

    The closure raises the same ExprDomainError as evaluate() would.
    """
    if isinstance(e, Constant):
        value = float(e.value)
        return lambda s: value

    if isinstance(e, Variable):
        return lambda s: s

    if isinstance(e, Unary):
        child = compile_expr(e.child)
        node = e

        if e.op == "neg":
            return lambda s: -child(s)
        if e.op == "abs":
            return lambda s: abs(child(s))
        if e.op == "sin":
            return lambda s: math.sin(child(s))
        if e.op == "cos":
            return lambda s: math.cos(child(s))
        if e.op == "exp":
            return _guard_overflow(lambda s: math.exp(child(s)), node)

        if e.op == "ln":
            def ln(s: float) -> float:
                u = child(s)
                if u <= 0:
                    raise _domain_error(f"ln of non-positive value {u!r}", node, s)
                return math.log(u)

            return ln

        def sqrt(s: float) -> float:
            u = child(s)
            if u < 0:
                raise _domain_error(f"sqrt of negative value {u!r}", node, s)
            return math.sqrt(u)

        return sqrt

    left = compile_expr(e.left)
    right = compile_expr(e.right)
    node = e

    if e.op == "+":
        return lambda s: left(s) + right(s)
    if e.op == "-":
        return lambda s: left(s) - right(s)
    if e.op == "*":
        return lambda s: left(s) * right(s)

    if e.op == "/":
        def divide(s: float) -> float:
            denominator = right(s)
            if denominator == 0:
                raise _domain_error("Division by zero", node, s)
            return left(s) / denominator

        return divide

    constant_exponent = not contains_variable(e.right)

    def power(s: float) -> float:
        base = left(s)
        exponent = right(s)
        if not constant_exponent and base <= 0:
            raise _domain_error(f"Non-constant exponent needs a positive base, got {base!r}", node, s)
        if base == 0 and exponent < 0:
            raise _domain_error("0 raised to a negative power", node, s)
        if base < 0 and not float(exponent).is_integer():
            raise _domain_error(f"Negative base {base!r} with non-integer exponent", node, s)
        return math.pow(base, exponent)

    return _guard_overflow(power, node)


def evaluate(e: Expr, s: float) -> float:
    """
    Evaluate an expression at a point.

    Raises:
        ExprDomainError: ln of non-positive, sqrt of negative, division by zero,
            0^negative or an invalid power, naming the offending subexpression
    """
    return compile_expr(e)(float(s))


# ============================================================================
# DIFFERENTIATION
# ============================================================================


def _fold(op: str, left: Expr, right: Expr) -> Expr:
    """Build Binary(op, left, right), folding Constant-op-Constant."""
    if isinstance(left, Constant) and isinstance(right, Constant):
        a, b = left.value, right.value
        try:
            if op == "+":
                return Constant(a + b)
            if op == "-":
                return Constant(a - b)
            if op == "*":
                return Constant(a * b)
            if op == "/" and b != 0:
                return Constant(a / b)
            if op == "^" and not (a == 0 and b < 0) and (a >= 0 or float(b).is_integer()):
                return Constant(math.pow(a, b))
        except OverflowError:
            pass
    return Binary(op, left, right)  # type: ignore[arg-type]


def differentiate(e: Expr) -> Expr:
    """
    Symbolic derivative with respect to `s`.

    Raises:
        DifferentiationError: If the tree contains abs
    """
    if isinstance(e, Constant):
        return Constant(0.0)
    if isinstance(e, Variable):
        return Constant(1.0)

    if isinstance(e, Unary):
        u = e.child
        du = differentiate(u)
        if e.op == "neg":
            return Unary("neg", du)
        if e.op == "ln":
            return _fold("/", du, u)
        if e.op == "exp":
            return _fold("*", e, du)
        if e.op == "sin":
            return _fold("*", Unary("cos", u), du)
        if e.op == "cos":
            return _fold("*", Unary("neg", Unary("sin", u)), du)
        if e.op == "sqrt":
            return _fold("/", du, _fold("*", Constant(2.0), e))
        raise DifferentiationError(f"Cannot differentiate non-differentiable node '{to_text(e)}'", e)

    u, v = e.left, e.right
    if e.op in ("+", "-"):
        return _fold(e.op, differentiate(u), differentiate(v))
    if e.op == "*":
        return _fold("+", _fold("*", differentiate(u), v), _fold("*", u, differentiate(v)))
    if e.op == "/":
        numerator = _fold("-", _fold("*", differentiate(u), v), _fold("*", u, differentiate(v)))
        return _fold("/", numerator, _fold("^", v, Constant(2.0)))

    # e.op == "^"
    if not contains_variable(v):
        reduced = _fold("^", u, _fold("-", v, Constant(1.0)))
        return _fold("*", _fold("*", v, reduced), differentiate(u))

    # d(u^v) = u^v * (v' ln u + v u'/u)
    log_term = _fold("*", differentiate(v), Unary("ln", u))
    ratio_term = _fold("*", v, _fold("/", differentiate(u), u))
    return _fold("*", e, _fold("+", log_term, ratio_term))


def nth_derivative(e: Expr, order: int) -> Expr:
    """Apply differentiate() `order` times."""
    if order < 0:
        raise ValueError(f"Derivative order must be non-negative, got {order}")
    for _ in range(order):
        e = differentiate(e)
    return e


# ============================================================================
# FUNCTION DEFINITIONS
# ============================================================================


@dataclass(frozen=True)
class FunctionDef:
    """A user-supplied integrand f(s) with an optional label and positivity hint."""

    expr: Expr
    name: str | None = None
    domain_hint: Interval | None = field(default=None, compare=False)

    @classmethod
    def from_text(
        cls,
        text: str,
        name: str | None = None,
        domain_hint: Interval | None = None,
    ) -> FunctionDef:
        return cls(parse(text), name=name, domain_hint=domain_hint)

    @property
    def text(self) -> str:
        return to_text(self.expr)

    @property
    def label(self) -> str:
        return self.name or self.text

    @cached_property
    def _compiled(self) -> Compiled:
        return compile_expr(self.expr)

    def __call__(self, s: float) -> float:
        return self._compiled(s)

    def derivative(self, order: int = 1) -> FunctionDef:
        """Return f^(order) as a new FunctionDef."""
        derived = nth_derivative(self.expr, order)
        logger.debug(f"Derivative of order {order} of '{self.text}' built")
        return FunctionDef(derived, name=f"d{order}[{self.label}]", domain_hint=self.domain_hint)
