from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from stickkit.core import Instance


def make(a, b, edges, **kw) -> Instance:
    return Instance(a_vertices=a, b_vertices=b, edges=edges, **kw)


def all_bipartite(n_a: int, n_b: int):
    a = [f"a{i}" for i in range(1, n_a + 1)]
    b = [f"b{j}" for j in range(1, n_b + 1)]
    pairs = list(itertools.product(a, b))
    for mask in range(1 << len(pairs)):
        yield a, b, [p for k, p in enumerate(pairs) if mask >> k & 1]


def random_instance(rng: random.Random, n_a: int, n_b: int, p: float = 0.4, lengths=None) -> Instance:
    a = [f"a{i}" for i in range(1, n_a + 1)]
    b = [f"b{j}" for j in range(1, n_b + 1)]
    edges = [(x, y) for x in a for y in b if rng.random() < p]
    ln = None
    if lengths is not None:
        ln = {v: Fraction(rng.choice(lengths)) for v in a + b}
    return Instance(a, b, edges, lengths=ln)


@pytest.fixture
def rng():
    return random.Random(20240611)
