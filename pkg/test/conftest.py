"""
Shared fixtures: the small graphs and digraphs most tests lean on.
"""

import os
import random
import sys

import pytest

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.cache import clear_cache
from core.config import WidthConfig, set_config
from core.generators import bidirected_complete, complete_bipartite, directed_cycle, even_cycle
from core.graph_core import BipartiteGraph, Matching
from core.width2 import ladder


@pytest.fixture(autouse=True)
def fresh_state():
    """Default caps and an empty porosity cache for every test."""
    previous = set_config(WidthConfig())
    clear_cache()
    yield
    set_config(previous)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def k2():
    return BipartiteGraph.from_counts(1, 1, {(1, 1)})


@pytest.fixture
def c4():
    return even_cycle(2)


@pytest.fixture
def c6():
    return even_cycle(3)


@pytest.fixture
def k33():
    return complete_bipartite(3)


@pytest.fixture
def k44():
    return complete_bipartite(4)


@pytest.fixture
def l4():
    return ladder(4)


@pytest.fixture
def l5():
    return ladder(5)


@pytest.fixture
def identity():
    """The matching a_i b_i on n + n vertices."""
    def build(n: int) -> Matching:
        return Matching.of((i, i) for i in range(1, n + 1))
    return build


@pytest.fixture
def digon():
    return bidirected_complete(2)


@pytest.fixture
def bi_k3():
    return bidirected_complete(3)


@pytest.fixture
def bi_k4():
    return bidirected_complete(4)


@pytest.fixture
def triangle():
    return directed_cycle(3)
