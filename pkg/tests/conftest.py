from fractions import Fraction

import pytest

from endpoint_lab import LemmaEngine, Thomae
from endpoint_lab.default_corpus import default_corpus


@pytest.fixture
def corpus():
    return default_corpus


@pytest.fixture
def step():
    return default_corpus.get("step_with_jumps")


@pytest.fixture
def thomae_short():
    return Thomae((Fraction(0), Fraction(2, 5)))


@pytest.fixture
def engine():
    return LemmaEngine()
