from __future__ import annotations

import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from leibfrat import catalog
from leibfrat.exactlin import GF, QQ, Field, Matrix

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PRIMES = (2, 3, 5, 7)


@pytest.fixture
def F5() -> Field:
    return GF(5)


@pytest.fixture
def ex8_q():
    return catalog.example8(QQ).algebra


@pytest.fixture
def ex17_q():
    return catalog.example17(QQ).algebra


fields = st.one_of(st.just(QQ), st.sampled_from(PRIMES).map(GF))


@st.composite
def matrices(draw, field=None, max_dim=4, square=False):
    F = draw(fields) if field is None else field
    r = draw(st.integers(0, max_dim))
    c = r if square else draw(st.integers(0, max_dim))
    entries = st.integers(-4, 4)
    rows = [[F(draw(entries)) for _ in range(c)] for _ in range(r)]
    return Matrix.from_rows(F, rows, c)


@st.composite
def extension_algebras(draw):
    """Random extensions of small nilpotent bases, indexed by a seed."""
    seed = draw(st.integers(0, 10_000))
    return catalog.random_extension_corpus([seed])[0].algebra


def seeded_algebras(count: int, seed: int = 0):
    rng = random.Random(seed)
    return [e.algebra for e in catalog.random_extension_corpus([rng.randrange(10**6) for _ in range(count)])]
