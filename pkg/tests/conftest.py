"""Pytest configuration and shared fixtures for origami-monodromy tests."""

import random
from itertools import permutations, product
from typing import Generator
from unittest.mock import Mock, patch

import pytest
from sympy import ImmutableMatrix

from common.containers import DEFAULTS, container
from common.errors import NotTransitiveError
from origami.origami import Origami, parse_origami
from origami.permutation import Permutation

M_STAR = "h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6"
M_STAR_STAR = "h=(2,3)(4,5,6); v=(1,2)(3,4); n=6"

A_STAR = ImmutableMatrix([[1, 0, 3, 3], [0, 1, -2, -4], [0, 0, 1, 0], [0, 0, 0, 1]])
B_STAR = ImmutableMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [3, 3, 1, 0], [-2, -4, 0, 1]])
C_STAR = ImmutableMatrix([[2, 2, 1, 2], [-1, -1, -1, -2], [-1, -2, 0, -2], [1, 2, 1, 3]])
D_STAR = A_STAR
E_STAR = ImmutableMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [-1, -3, 0, 1]])
F_STAR = ImmutableMatrix([[2, 3, 1, 3], [-2, -5, -2, -6], [-1, -3, 0, -3], [2, 6, 2, 7]])

# Intersection form on the waist-difference basis of H1-perp of M*
M_STAR_PERP_FORM = ImmutableMatrix(
    [[0, 0, 1, -1], [0, 0, -1, -5], [-1, 1, 0, 0], [1, 5, 0, 0]]
)


@pytest.fixture
def m_star() -> Origami:
    return parse_origami(M_STAR)


@pytest.fixture
def m_star_star() -> Origami:
    return parse_origami(M_STAR_STAR)


@pytest.fixture
def torus() -> Origami:
    return parse_origami("h=(1); v=(1); n=1")


@pytest.fixture
def l_origami() -> Origami:
    return parse_origami("h=(1,2); v=(1,3); n=3")


def _random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def build_corpus(size: int = 50, seed: int = 20240611) -> list[Origami]:
    """Deterministic transitive permutation pairs on at most six squares."""
    rng = random.Random(seed)
    corpus = [
        parse_origami(M_STAR),
        parse_origami(M_STAR_STAR),
        parse_origami("h=(1); v=(1); n=1"),
        parse_origami("h=(1,2); v=(1,3); n=3"),
    ]
    while len(corpus) < size:
        n = rng.randint(2, 6)
        try:
            corpus.append(Origami(_random_permutation(rng, n), _random_permutation(rng, n)))
        except NotTransitiveError:
            continue
    return corpus


def all_origamis(max_n: int) -> list[Origami]:
    """Every transitive permutation pair on 1..n for n <= max_n, unreduced."""
    found: list[Origami] = []
    for n in range(1, max_n + 1):
        pool = [Permutation(images) for images in permutations(range(1, n + 1))]
        for h, v in product(pool, repeat=2):
            try:
                found.append(Origami(h, v))
            except NotTransitiveError:
                continue
    return found


@pytest.fixture(scope="session")
def small_origamis() -> list[Origami]:
    return all_origamis(4)


@pytest.fixture(scope="session")
def corpus() -> list[Origami]:
    return build_corpus()


@pytest.fixture(autouse=True)
def reset_configuration() -> Generator[None, None, None]:
    """Undo configuration overrides made by CLI flags."""
    yield
    container.config.from_dict(DEFAULTS)


@pytest.fixture
def mock_console_print() -> Generator[Mock, None, None]:
    """Mock Rich console.print to capture what the CLI prints."""
    with patch("main.console.print") as mock_print:
        yield mock_print
