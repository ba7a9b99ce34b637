"""Doubly-exponential layer cascade with successor-pointer early stopping.

Layer j holds 2**(2**j) keys (4, 16, 256, 65536, ...), the last layer holding
whatever remains, and each layer is its own predecessor structure over the
full universe.  A query probes the layers in order, keeping the best (largest)
local predecessor seen so far; each stored key knows its successor in the full
key set, so as soon as the best candidate's successor exceeds the query the
candidate is provably the global answer and the search stops.  A query below
every stored key can only be recognized after all layers have answered empty.

Two ways of ranking keys into layers:

* the static variant sorts keys by how much query mass they answer for
  (descending, ties by ascending key), so frequent answers sit in the tiny
  front layers;
* the self-adjusting variant ranks by recency: every reported answer moves to
  the front layer and, for each layer above the one it came from, the stalest
  key shifts down one layer to keep all occupancies at capacity.

The per-layer structure is pluggable; the default is the bucketed trie, which
the self-adjusting variant also relies on for insert/delete support.
"""

from __future__ import annotations

from collections import OrderedDict
from typing import Callable, Optional, Sequence

from .core import (
    KeySet,
    PredecessorStructure,
    QueryStats,
    UniverseSpec,
    WeightedDistribution,
    output_distribution,
)
from .yfast import YFastTrie

LayerFactory = Callable[[KeySet, UniverseSpec], PredecessorStructure]


def layer_capacities(n: int) -> list[int]:
    """Layer sizes 4, 16, 256, ... clipped so they sum to exactly n."""
    caps: list[int] = []
    j = 1
    while n > 0:
        c = min(n, 1 << (1 << j))
        caps.append(c)
        n -= c
        j += 1
    return caps


def _successor_map(keys: KeySet) -> dict[int, Optional[int]]:
    ks = keys.keys
    succ: dict[int, Optional[int]] = {ks[i]: ks[i + 1] for i in range(len(ks) - 1)}
    succ[ks[-1]] = None  # top sentinel: nothing in S is larger
    return succ


class _LayeredBase(PredecessorStructure):
    """Shared search logic; subclasses decide ordering and what happens after."""

    universe: UniverseSpec
    layers: list[PredecessorStructure]
    _succ: dict[int, Optional[int]]

    def _build_layers(self, ordered: Sequence[int], universe: UniverseSpec,
                      layer_factory: LayerFactory) -> list[tuple[int, ...]]:
        caps = layer_capacities(len(ordered))
        slices: list[tuple[int, ...]] = []
        start = 0
        for c in caps:
            slices.append(tuple(sorted(ordered[start:start + c])))
            start += c
        self.layers = [layer_factory(KeySet(s), universe) for s in slices]
        return slices

    def _scan(self, q: int) -> tuple[Optional[int], int]:
        """Probe layers in order; stop once the best candidate is proven global."""
        self.universe.check_key(q)
        succ = self._succ
        best: Optional[int] = None
        probed = 0
        for layer in self.layers:
            probed += 1
            local = layer.predecessor(q)
            if local is not None and (best is None or local > best):
                best = local
            if best is not None:
                s = succ[best]
                if s is None or s > q:
                    return best, probed
        return best, probed

    @property
    def num_layers(self) -> int:
        return len(self.layers)


class LayeredStructure(_LayeredBase):
    """Static cascade ranked by output probability."""

    def __init__(self, keys: KeySet, dist: WeightedDistribution,
                 universe: UniverseSpec, layer_factory: LayerFactory = YFastTrie):
        universe.check_key(keys.keys[-1])
        self.universe = universe
        self.output = output_distribution(keys, dist)
        p_star = self.output.p_star
        ordered = sorted(keys.keys, key=lambda k: (-p_star(k), k))
        self.layer_keys = self._build_layers(ordered, universe, layer_factory)
        self._succ = _successor_map(keys)

    def query(self, q: int) -> tuple[Optional[int], int]:
        """Answer plus the number of layers probed."""
        return self._scan(q)

    def predecessor(self, q: int) -> Optional[int]:
        return self._scan(q)[0]

    def query_stats(self, q: int) -> QueryStats:
        answer, probed = self._scan(q)
        return QueryStats(answer=answer, layers_probed=probed)

    def layer_sizes(self) -> list[int]:
        return [len(ks) for ks in self.layer_keys]

    def table_entries(self) -> int:
        """Stored entries across all layers plus the successor pointers."""
        total = len(self._succ)
        for layer in self.layers:
            total += layer.table_entries()
        return total


class WorkingSetLayered(_LayeredBase):
    """Self-adjusting cascade ranked by recency of being reported.

    Every query that reports an answer mutates the structure, so access must
    be externally serialized.  Layer structures must support insert/delete.
    """

    def __init__(self, keys: KeySet, universe: UniverseSpec,
                 layer_factory: LayerFactory = YFastTrie):
        universe.check_key(keys.keys[-1])
        self.universe = universe
        slices = self._build_layers(keys.keys, universe, layer_factory)
        self.capacities = [len(s) for s in slices]
        # Front of each queue is the stalest key in that layer.  Untouched keys
        # keep their build order (ascending), so they shift down smallest-first.
        self._recency: list[OrderedDict[int, None]] = [
            OrderedDict((k, None) for k in s) for s in slices
        ]
        self._succ = _successor_map(keys)

    def query(self, q: int) -> tuple[Optional[int], int]:
        """Answer plus layers probed; promotes the answer to the front layer."""
        answer, probed = self._scan(q)
        if answer is not None:
            self._promote(answer, probed - 1)
        return answer, probed

    def predecessor(self, q: int) -> Optional[int]:
        return self.query(q)[0]

    def query_stats(self, q: int) -> QueryStats:
        answer, probed = self.query(q)
        return QueryStats(answer=answer, layers_probed=probed)

    def _promote(self, x: int, j: int) -> None:
        rec = self._recency
        if j == 0:
            rec[0].pop(x)
            rec[0][x] = None
            return
        self.layers[j].delete(x)
        rec[j].pop(x)
        for k in range(j):
            stale, _ = rec[k].popitem(last=False)
            self.layers[k].delete(stale)
            self.layers[k + 1].insert(stale)
            rec[k + 1][stale] = None
        self.layers[0].insert(x)
        rec[0][x] = None

    def layer_sizes(self) -> list[int]:
        return [len(r) for r in self._recency]

    def layer_contents(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(r)) for r in self._recency]

    def audit(self) -> None:
        """Raise AssertionError unless occupancies and the partition are intact."""
        sizes = self.layer_sizes()
        assert sizes == self.capacities, f"occupancy {sizes} != capacities {self.capacities}"
        seen: set[int] = set()
        for r, layer in zip(self._recency, self.layers):
            keys = set(r)
            assert keys == set(layer), "recency queue and layer structure disagree"
            assert not (keys & seen), "key present in two layers"
            seen |= keys
        assert seen == set(self._succ), "layers do not partition the key set"

    def table_entries(self) -> int:
        total = len(self._succ)
        for layer in self.layers:
            total += layer.table_entries()
        return total


class WorkingSetTracker:
    """Reference bookkeeping for recency bounds (test and verify builds only).

    Keeps reported answers in most-recent-first order; the number of distinct
    predecessors reported since a key's previous report is its position in
    that order at the moment it is reported again.
    """

    def __init__(self) -> None:
        self._order: list[int] = []

    def observe(self, answer: Optional[int]) -> Optional[int]:
        """Record a report; returns distinct reports since its last one.

        Returns None for queries with no predecessor (they report nothing) and
        for first-time reports (working-set number "n / never reported").
        """
        if answer is None:
            return None
        try:
            i = self._order.index(answer)
        except ValueError:
            self._order.insert(0, answer)
            return None
        del self._order[i]
        self._order.insert(0, answer)
        return i
