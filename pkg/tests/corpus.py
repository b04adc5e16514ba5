"""Deterministic instance sets shared by the acceptance and property tests."""

from __future__ import annotations

import functools
import random

from fincat import fixtures
from fincat.comma import Diagram
from fincat.generate import (
    random_free_category,
    random_functor,
    random_left_morphism,
    random_left_morphism_pair,
)


@functools.lru_cache(maxsize=None)
def generated_diagrams(n: int = 200, seed: int = 2024) -> tuple[Diagram, ...]:
    """Random functors between free categories on graphs with at most 5 vertices and 7 edges."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        J = random_free_category(rng, 5, 7)
        X = random_free_category(rng, 5, 7, min_vertices=2)
        out.append(Diagram(random_functor(rng, J, X)))
    return tuple(out)


def small_bases(rng: random.Random):
    """Fixture categories and small random free categories, used as ambient categories."""
    fixed = list(fixtures.categories().values())
    if rng.random() < 0.3:
        return rng.choice(fixed)
    return random_free_category(rng, 4, 5, min_vertices=2)


@functools.lru_cache(maxsize=None)
def generated_left_morphisms(n: int = 220, seed: int = 7):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        X = small_bases(rng)
        d = Diagram(random_functor(rng, random_free_category(rng, 4, 4), X))
        out.append(random_left_morphism(rng, d))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def generated_pairs(n: int = 120, seed: int = 11):
    rng = random.Random(seed)
    return tuple(random_left_morphism_pair(rng, small_bases(rng)) for _ in range(n))


def fixture_diagrams():
    return list(fixtures.diagrams().values())


def fixture_left_morphisms():
    return list(fixtures.left_morphisms().values())
