"""Sweep corpora: the builtin `paper` set and `name | expression | a | b` files."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path

from trapbound.services.errors import CorpusError
from trapbound.services.expr import FunctionDef
from trapbound.services.quad import Interval

logger = logging.getLogger(__name__)

NAMED_ENDPOINTS: dict[str, float] = {"e": math.e, "pi": math.pi}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expression: str
    a: float
    b: float

    def function(self) -> FunctionDef:
        return FunctionDef.from_text(self.expression, name=self.name)

    def interval(self) -> Interval:
        return Interval(self.a, self.b)


BUILTIN_CORPORA: dict[str, tuple[CorpusEntry, ...]] = {
    "paper": (
        CorpusEntry("recip_sq", "1/s^2", 1.0, 2.0),
        CorpusEntry("recip", "1/s", 1.0, 2.0),
        CorpusEntry("log", "ln(s)", 1.0, math.e),
        CorpusEntry("power_2", "s^2", 1.0, 2.0),
        CorpusEntry("power_3", "s^3", 1.0, 2.0),
        CorpusEntry("power_half", "s^0.5", 1.0, 2.0),
        CorpusEntry("exp", "exp(s)", 1.0, 2.0),
    ),
}


def _endpoint(token: str, line: int) -> float:
    token = token.strip()
    if token in NAMED_ENDPOINTS:
        return NAMED_ENDPOINTS[token]
    try:
        return float(token)
    except ValueError:
        raise CorpusError(f"Invalid interval endpoint {token!r}", line) from None


def parse_corpus(text: str) -> list[CorpusEntry]:
    """
    Parse corpus text: one `name | expression | a | b` entry per line.

    Blank lines and `#` comments are skipped.

    Raises:
        CorpusError: On malformed lines or when no entry is present
    """
    entries: list[CorpusEntry] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [part.strip() for part in line.split("|")]
        if len(parts) != 4 or not parts[0] or not parts[1]:
            raise CorpusError(f"Expected 'name | expression | a | b', got {raw.strip()!r}", number)
        name, expression, a, b = parts
        entries.append(CorpusEntry(name, expression, _endpoint(a, number), _endpoint(b, number)))

    if not entries:
        raise CorpusError("Corpus is empty")
    return entries


def load_corpus(source: str) -> list[CorpusEntry]:
    """
    Resolve a builtin corpus name or read a corpus file.

    Args:
        source: Builtin name (e.g. "paper") or a file path

    Returns:
        Entries in input order
    """
    if source in BUILTIN_CORPORA:
        return list(BUILTIN_CORPORA[source])

    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise CorpusError(f"Cannot read corpus {source!r}: {e}") from e

    entries = parse_corpus(text)
    logger.info(f"Loaded {len(entries)} corpus entries from {path}")
    return entries
