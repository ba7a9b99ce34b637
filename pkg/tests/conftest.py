import random

import pytest

from predsearch import (
    KeySet,
    UniverseSpec,
    WeightedDistribution,
    WorkloadSpec,
    generate_distribution,
)

KIND_CYCLE = ("uniform", "geometric", "zipf", "pointmass")


def random_keyset(rnd: random.Random, universe: UniverseSpec, n: int) -> KeySet:
    keys = rnd.sample(range(universe.size), n) if universe.bits <= 22 else None
    if keys is None:
        seen = set()
        while len(seen) < n:
            seen.add(rnd.randrange(universe.size))
        keys = list(seen)
    return KeySet(sorted(keys))


def random_distribution(rnd: random.Random, universe: UniverseSpec,
                        keys: KeySet, kind: str) -> WeightedDistribution:
    """Distribution over a random support mixing stored and unrelated keys."""
    support = set(rnd.sample(keys.keys, min(len(keys), 1 + rnd.randrange(64))))
    extra = rnd.randrange(1, 65)
    while extra:
        support.add(rnd.randrange(universe.size))
        extra -= 1
    spec = WorkloadSpec(kind=kind, support=tuple(sorted(support)),
                        ratio=0.25 + 0.5 * rnd.random(), s=0.5 + rnd.random())
    return generate_distribution(spec)


@pytest.fixture
def rnd() -> random.Random:
    return random.Random(0xC0FFEE)
