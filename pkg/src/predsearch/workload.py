"""Seeded workload generation: key sets, weight maps, query streams.

All randomness comes from PCG64 generators derived from a single user seed by
fixed stream splitting, so key generation and query sampling are independently
reproducible.  Weight assignment itself is deterministic in the support order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import KeySet, ParameterError, UniverseSpec, WeightedDistribution

#: Generator recorded in benchmark reports for reproducibility.
RNG_NAME = "pcg64"

# stream tags for sub-seed derivation
STREAM_KEYS = 0
STREAM_QUERIES = 1

KIND_UNIFORM = "uniform"
KIND_GEOMETRIC = "geometric"
KIND_ZIPF = "zipf"
KIND_POINT_MASS = "pointmass"
KINDS = (KIND_UNIFORM, KIND_GEOMETRIC, KIND_ZIPF, KIND_POINT_MASS)

# smallest positive double; geometric tails below this are clamped rather than
# allowed to underflow to zero weight
_TINY = 5e-324


def rng_for(seed: int, stream: int) -> np.random.Generator:
    """Deterministic generator for (seed, stream)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))


@dataclass(frozen=True)
class WorkloadSpec:
    """How to weight a support of universe keys.

    Ranks follow the order of ``support``: geometric weight decays by
    ``ratio`` per rank, zipf weight is (rank+1)**-s, uniform weights
    everything equally and pointmass puts everything on the first key.
    """

    kind: str
    support: tuple[int, ...]
    ratio: float = 0.5
    s: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ParameterError(f"unknown workload kind {self.kind!r}")
        if not self.support:
            raise ParameterError("workload support must be nonempty")
        if self.kind == KIND_GEOMETRIC and not 0.0 < self.ratio < 1.0:
            raise ParameterError(f"geometric ratio must be in (0, 1), got {self.ratio}")
        if self.kind == KIND_ZIPF and not self.s > 0.0:
            raise ParameterError(f"zipf exponent must be > 0, got {self.s}")


def generate_distribution(spec: WorkloadSpec) -> WeightedDistribution:
    support = spec.support
    if spec.kind == KIND_UNIFORM:
        weights = {k: 1.0 for k in support}
    elif spec.kind == KIND_GEOMETRIC:
        weights = {k: max(spec.ratio ** rank, _TINY) for rank, k in enumerate(support)}
    elif spec.kind == KIND_ZIPF:
        weights = {k: float(rank + 1) ** -spec.s for rank, k in enumerate(support)}
    else:  # point mass
        weights = {support[0]: 1.0}
    return WeightedDistribution(weights)


def sample_keys(universe: UniverseSpec, n: int, seed: int,
                stream: int = STREAM_KEYS) -> KeySet:
    """n distinct keys sampled uniformly from the universe, sorted.

    Rejection sampling on batches; the universe is never materialized.
    """
    if n < 1:
        raise ParameterError(f"need at least one key, got n={n}")
    if n > (1 << universe.bits):
        raise ParameterError(f"cannot draw {n} distinct keys from a {universe.bits}-bit universe")
    rng = rng_for(seed, stream)
    chosen: dict[int, None] = {}
    high = 1 << universe.bits
    while len(chosen) < n:
        batch = rng.integers(0, high, size=max(16, 2 * (n - len(chosen))), dtype=np.uint64)
        for v in batch.tolist():
            chosen[v] = None
            if len(chosen) == n:
                break
    return KeySet(sorted(chosen))


def sample_queries(dist: WeightedDistribution, seed: int, count: int) -> list[int]:
    """count i.i.d. keys drawn from dist by inverse CDF over its support."""
    if count < 0:
        raise ParameterError(f"query count must be >= 0, got {count}")
    if count == 0:
        return []
    support = np.array(dist.support, dtype=np.uint64)
    weights = np.array([w for _, w in dist.items()], dtype=np.float64)
    cum = np.cumsum(weights)
    rng = rng_for(seed, STREAM_QUERIES)
    u = rng.random(count) * cum[-1]
    idx = np.searchsorted(cum, u, side="right")
    idx = np.minimum(idx, len(support) - 1)
    return support[idx].tolist()


def empirical_entropy(samples: Sequence[int]) -> float:
    """Entropy of the empirical frequency distribution of samples, in bits."""
    if not len(samples):
        raise ParameterError("no samples")
    _, counts = np.unique(np.asarray(samples, dtype=np.uint64), return_counts=True)
    total = float(len(samples))
    return math.fsum((c / total) * math.log2(total / c) for c in counts.tolist())
