from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from nvfix.harness import random_corpus_map, random_pl_map, random_region

settings.register_profile("nvfix", max_examples=40, deadline=None)
settings.load_profile("nvfix")

MAPS_DIR = Path(__file__).resolve().parent.parent / "maps"


def F(x) -> Fraction:
    return Fraction(x)


def seeded_map(seed: int):
    return random_corpus_map(random.Random(f"test-map:{seed}"))


def seeded_pl_map(seed: int):
    return random_pl_map(random.Random(f"test-pl:{seed}"))


def seeded_pair(seed: int):
    rng = random.Random(f"test-pair:{seed}")
    fmap = random_corpus_map(rng)
    return fmap, random_region(rng, fmap)


@pytest.fixture
def maps_dir() -> Path:
    return MAPS_DIR
