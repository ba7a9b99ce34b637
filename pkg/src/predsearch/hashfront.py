"""Front hash table of high-probability keys, backed by a bucketed trie.

Universe keys whose query probability meets a threshold are stored in a flat
table together with their precomputed answer, so a query that hits the table
finishes in a single probe.  Everything else falls through to a trie over the
stored key set.  Two threshold shapes are supported:

* mode A: threshold (1/U)**epsilon, table of at most U**epsilon entries;
* mode B: threshold 2**(-(log2 U)**epsilon), a much smaller table of at most
  2**((log2 U)**epsilon) entries.

Only the distribution's support is scanned at build time; keys with zero
probability can never meet a positive threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from .core import (
    KeySet,
    ParameterError,
    PredecessorStructure,
    QueryStats,
    UniverseSpec,
    WeightedDistribution,
    meets_threshold,
    oracle_predecessor,
    padded_log2,
)
from .yfast import YFastTrie

MODE_A = "a"
MODE_B = "b"

_MISSING = object()


@dataclass(frozen=True)
class ThresholdMode:
    """Which probability threshold the front table uses."""

    kind: str
    epsilon: float

    def __post_init__(self) -> None:
        if self.kind not in (MODE_A, MODE_B):
            raise ParameterError(f"unknown threshold mode {self.kind!r}")
        eps = self.epsilon
        if self.kind == MODE_A and not 0.0 < eps <= 1.0:
            raise ParameterError(f"mode A requires epsilon in (0, 1], got {eps}")
        if self.kind == MODE_B and not 0.0 < eps < 1.0:
            raise ParameterError(f"mode B requires epsilon in (0, 1), got {eps}")

    @classmethod
    def mode_a(cls, epsilon: float) -> "ThresholdMode":
        return cls(MODE_A, float(epsilon))

    @classmethod
    def mode_b(cls, epsilon: float) -> "ThresholdMode":
        return cls(MODE_B, float(epsilon))

    def threshold(self, bits: int) -> float:
        if self.kind == MODE_A:
            return 2.0 ** (-bits * self.epsilon)
        return 2.0 ** (-(bits ** self.epsilon))

    def table_capacity(self, bits: int) -> float:
        """Upper bound on the table size: 1 / threshold."""
        if self.kind == MODE_A:
            return 2.0 ** (bits * self.epsilon)
        return 2.0 ** (bits ** self.epsilon)


class HashFront(PredecessorStructure):
    """Threshold table in front of a YFastTrie fallback over the key set."""

    __slots__ = ("universe", "mode", "threshold", "table", "fallback")

    def __init__(self, keys: KeySet, dist: WeightedDistribution,
                 universe: UniverseSpec, mode: ThresholdMode):
        universe.check_key(keys.keys[-1])
        t = mode.threshold(universe.bits)
        table: dict[int, Optional[int]] = {}
        total = dist.total
        for key, w in dist.items():
            universe.check_key(key)
            if meets_threshold(w / total, t):
                table[key] = oracle_predecessor(keys, key)
        self.universe = universe
        self.mode = mode
        self.threshold = t
        self.table = table
        self.fallback = YFastTrie(keys, universe)

    @property
    def table_size(self) -> int:
        return len(self.table)

    def predecessor(self, q: int) -> Optional[int]:
        self.universe.check_key(q)
        v = self.table.get(q, _MISSING)
        if v is not _MISSING:
            return v
        return self.fallback.predecessor(q)

    def query_stats(self, q: int) -> QueryStats:
        self.universe.check_key(q)
        v = self.table.get(q, _MISSING)
        if v is not _MISSING:
            return QueryStats(answer=v, table_probes=1, table_hit=True)
        answer, probes = self.fallback.predecessor_with_probes(q)
        return QueryStats(answer=answer, level_probes=probes, table_probes=1, table_hit=False)

    def table_entries(self) -> int:
        return len(self.table) + self.fallback.table_entries()


@dataclass(frozen=True)
class ProbeBoundReport:
    """Analytic probe-cost summary for a (distribution, mode) pair.

    ``hit_mass`` is the probability a query lands in the front table and
    finishes in one probe; ``miss_mass`` falls through to the trie.  Each
    support element also gets its individual bound log log (W / w_i), taken
    with the padded log so tiny arguments stay meaningful.
    """

    threshold: float
    hit_mass: float
    miss_mass: float
    element_bounds: Mapping[int, float]


def expected_probe_bound(dist: WeightedDistribution, universe: UniverseSpec,
                         mode: ThresholdMode) -> ProbeBoundReport:
    t = mode.threshold(universe.bits)
    total = dist.total
    hit = []
    miss = []
    bounds: dict[int, float] = {}
    for key, w in dist.items():
        p = w / total
        (hit if meets_threshold(p, t) else miss).append(p)
        bounds[key] = padded_log2(padded_log2(total / w))
    return ProbeBoundReport(
        threshold=t,
        hit_mass=math.fsum(hit),
        miss_mass=math.fsum(miss),
        element_bounds=bounds,
    )
