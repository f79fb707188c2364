"""Shared fixtures: the standard small instances and the seeded random
corpora reused by the property and acceptance suites."""

import pytest

from shadowlab import Cancellative, Expansion, complete, turan
from shadowlab.extremal import enumerate_free_classes, random_free_graph

RANDOM_CORPUS_SIZE = 10_000


@pytest.fixture(scope="session")
def t6():
    return turan(6, 3, 3)[0]


@pytest.fixture(scope="session")
def t6_parts():
    return turan(6, 3, 3)[1]


@pytest.fixture(scope="session")
def k4():
    return complete(4, 3)


def _corpus(family, base_seed):
    out = []
    for seed in range(RANDOM_CORPUS_SIZE):
        n = 4 + seed % 7  # 4..10
        target = 2 + seed % 11
        out.append(random_free_graph(n, 3, family, base_seed + seed, target))
    return out


@pytest.fixture(scope="session")
def random_cancellative_corpus():
    return _corpus(Cancellative(), 0)


@pytest.fixture(scope="session")
def random_expansion_corpus():
    return _corpus(Expansion(3), 1_000_000)


@pytest.fixture(scope="session")
def cancellative_classes_n6():
    """Isomorphism-class representatives of every cancellative 3-graph on
    at most 6 vertices (smaller supports appear via isolated vertices)."""
    return enumerate_free_classes(6, 3, Cancellative())


@pytest.fixture(scope="session")
def expansion_classes_n6():
    return enumerate_free_classes(6, 3, Expansion(3))
