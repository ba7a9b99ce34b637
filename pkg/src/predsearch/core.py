"""Universe, key-set and query-distribution primitives.

Keys are unsigned integers drawn from a bounded universe {0, ..., 2**bits - 1}.
Query distributions are sparse maps from keys to weights; nothing in this
package ever materializes or iterates the full universe, so 64-bit universes
are fine.  All types here are immutable after construction and safe for
concurrent reads.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

#: Relative tolerance for probability-vs-threshold comparisons.  A value within
#: this tolerance of the threshold counts as meeting it (inclusive rule).
REL_TOL = 1e-12


class ParameterError(ValueError):
    """A parameter is outside its documented range."""


class KeyRangeError(ValueError):
    """A key falls outside the structure's universe."""


class InvalidDistributionError(ValueError):
    """A weight map cannot be normalized to probabilities."""


def padded_log2(x: float) -> float:
    """log2(x + 2): stays well-defined and positive for tiny arguments.

    Used only in probe-bound reports, never in entropy itself.
    """
    return math.log2(x + 2.0)


def meets_threshold(p: float, threshold: float) -> bool:
    """Inclusive comparison: ties within REL_TOL count as above the threshold."""
    return p > threshold or math.isclose(p, threshold, rel_tol=REL_TOL)


@dataclass(frozen=True)
class UniverseSpec:
    """The key domain {0, ..., 2**bits - 1}."""

    bits: int

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or not 1 <= self.bits <= 64:
            raise ParameterError(f"universe bits must be an integer in [1, 64], got {self.bits!r}")

    @property
    def size(self) -> int:
        """Number of possible keys; conceptual only, never materialized."""
        return 1 << self.bits

    def check_key(self, key: int) -> int:
        if not 0 <= key < (1 << self.bits):
            raise KeyRangeError(f"key {key} outside {self.bits}-bit universe")
        return key


class KeySet:
    """A static, strictly increasing sequence of stored keys."""

    __slots__ = ("keys",)

    def __init__(self, keys: Iterable[int]):
        ks = tuple(keys)
        if not ks:
            raise ParameterError("key set must be nonempty")
        if ks[0] < 0:
            raise KeyRangeError(f"negative key {ks[0]}")
        for a, b in zip(ks, ks[1:]):
            if a >= b:
                raise ParameterError(f"keys must be strictly increasing ({a} before {b})")
        self.keys = ks

    @classmethod
    def from_iterable(cls, keys: Iterable[int]) -> "KeySet":
        """Sort and deduplicate, then construct."""
        return cls(sorted(set(keys)))

    @property
    def n(self) -> int:
        return len(self.keys)

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self) -> Iterator[int]:
        return iter(self.keys)

    def __getitem__(self, i: int) -> int:
        return self.keys[i]

    def __contains__(self, key: int) -> bool:
        i = bisect_right(self.keys, key) - 1
        return i >= 0 and self.keys[i] == key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KeySet) and self.keys == other.keys

    def __repr__(self) -> str:
        return f"KeySet(n={len(self.keys)}, min={self.keys[0]}, max={self.keys[-1]})"


class WeightedDistribution:
    """Sparse nonnegative weights over universe keys.

    The probability of key i is weight(i) / total; keys without an entry have
    probability zero.  Zero-weight entries are dropped at construction since
    they are indistinguishable from absent keys.
    """

    __slots__ = ("_weights", "support", "total")

    def __init__(self, weights: Mapping[int, float]):
        cleaned: dict[int, float] = {}
        for key, w in weights.items():
            w = float(w)
            if not math.isfinite(w) or w < 0.0:
                raise InvalidDistributionError(f"weight for key {key} must be finite and >= 0, got {w}")
            if key < 0:
                raise KeyRangeError(f"negative key {key}")
            if w > 0.0:
                cleaned[key] = w
        total = math.fsum(cleaned.values())
        if total <= 0.0:
            raise InvalidDistributionError("total weight must be positive")
        self._weights = cleaned
        self.support = tuple(sorted(cleaned))
        self.total = total

    @property
    def support_size(self) -> int:
        return len(self.support)

    def weight(self, key: int) -> float:
        return self._weights.get(key, 0.0)

    def probability(self, key: int) -> float:
        return self._weights.get(key, 0.0) / self.total

    def items(self) -> Iterator[tuple[int, float]]:
        """(key, weight) pairs in ascending key order."""
        w = self._weights
        return ((k, w[k]) for k in self.support)

    def __repr__(self) -> str:
        return f"WeightedDistribution(support={len(self.support)}, total={self.total!r})"


def entropy(dist: WeightedDistribution) -> float:
    """Entropy of the normalized distribution, in bits (standard log2).

    Terms with probability zero contribute nothing; a point mass has entropy
    exactly 0.  The padded-log convention is deliberately not applied here.
    """
    total = dist.total
    return math.fsum((w / total) * math.log2(total / w) for _, w in dist.items())


@dataclass(frozen=True)
class OutputDistribution:
    """Probability that each stored key is the answer to a query.

    ``masses[s]`` is the query mass of the half-open gap [s, next stored key),
    with the last gap running to the top of the universe.  ``bottom_mass`` is
    the mass of queries below the smallest stored key, which have no
    predecessor at all.
    """

    masses: Mapping[int, float]
    bottom_mass: float

    def p_star(self, key: int) -> float:
        return self.masses.get(key, 0.0)

    def total_mass(self) -> float:
        return math.fsum(self.masses.values()) + self.bottom_mass

    def entropy_bits(self) -> float:
        """Entropy over the n+1 outcomes (each stored key, plus "no answer")."""
        terms = [p for p in self.masses.values() if p > 0.0]
        if self.bottom_mass > 0.0:
            terms.append(self.bottom_mass)
        return math.fsum(p * math.log2(1.0 / p) for p in terms)


def output_distribution(keys: KeySet, dist: WeightedDistribution) -> OutputDistribution:
    """Fold the query distribution onto the stored keys that answer it.

    One merge over the distribution's sorted support against the sorted key
    sequence; the universe itself is never iterated.
    """
    sks = keys.keys
    n = len(sks)
    masses = {s: 0.0 for s in sks}
    bottom = 0.0
    j = -1  # index of the greatest stored key <= current support key
    for x, w in dist.items():
        while j + 1 < n and sks[j + 1] <= x:
            j += 1
        p = w / dist.total
        if j < 0:
            bottom += p
        else:
            masses[sks[j]] += p
    return OutputDistribution(masses=masses, bottom_mass=bottom)


def oracle_predecessor(keys: KeySet, q: int) -> Optional[int]:
    """Largest stored key <= q, or None if q is below the smallest key.

    Weak semantics: the predecessor of a stored key is itself.  This is the
    reference answer every structure in this package is tested against; query
    q - 1 for strict semantics.
    """
    i = bisect_right(keys.keys, q) - 1
    return keys.keys[i] if i >= 0 else None


@dataclass(frozen=True)
class QueryStats:
    """Per-query observables from an instrumented search.

    Plain value object returned per call; structures keep no shared counters.
    """

    answer: Optional[int]
    level_probes: int = 0   # prefix-table probes spent in trie searches
    layers_probed: int = 0  # layers visited (layer cascade structures only)
    table_probes: int = 0   # front-table lookups (hash-fronted structures only)
    table_hit: bool = False


class PredecessorStructure:
    """Minimal contract shared by every structure: answer weak predecessor queries."""

    def predecessor(self, q: int) -> Optional[int]:
        raise NotImplementedError

    def query_stats(self, q: int) -> QueryStats:
        """Instrumented query; default carries only the answer."""
        return QueryStats(answer=self.predecessor(q))
