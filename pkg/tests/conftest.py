"""Shared fixtures: the builtin corpus, common integrands and a fast scan grid."""

import math

import pytest
from hypothesis import settings

from trapbound.services.corpus import BUILTIN_CORPORA, CorpusEntry
from trapbound.services.expr import FunctionDef
from trapbound.services.quad import Interval

# Quadrature-heavy properties: no deadline, modest example counts
settings.register_profile("trapbound", deadline=None, max_examples=25)
settings.load_profile("trapbound")

# Small scan grid so every solver test stays fast
FAST_GRID = 32


@pytest.fixture
def grid_n() -> int:
    return FAST_GRID


@pytest.fixture(params=[entry.name for entry in BUILTIN_CORPORA["paper"]])
def corpus_entry(request: pytest.FixtureRequest) -> CorpusEntry:
    return next(entry for entry in BUILTIN_CORPORA["paper"] if entry.name == request.param)


@pytest.fixture
def recip_sq() -> FunctionDef:
    return FunctionDef.from_text("1/s^2", name="recip_sq")


@pytest.fixture
def one_two() -> Interval:
    return Interval(1.0, 2.0)


@pytest.fixture
def sqrt2() -> float:
    return math.sqrt(2.0)
