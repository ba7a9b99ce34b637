"""Hashed prefix-level trie: predecessor search in O(log bits) table probes.

For a universe of ``w`` bits the trie keeps ``w + 1`` hash tables.  Table L is
keyed by the top-L bits of every stored key and maps each present prefix to
the smallest and largest stored key beneath it.  A binary search over the
levels locates the longest stored prefix of the query; the (min, max)
descendant pointers plus the sorted leaf array then resolve the predecessor
with O(1) additional work:

* if the query diverges from the trie by a 1-bit, every stored key under the
  found prefix sits in its 0-subtree, so the prefix's max leaf is the answer;
* if it diverges by a 0-bit, every stored key under the prefix is larger than
  the query, so the answer is the leaf immediately before the prefix's min.

The structure is static.  Plain dicts provide the expected-O(1) tables; a
perfect-hash construction would also satisfy the contract but is unnecessary
here.
"""

from __future__ import annotations

from typing import Optional

from .core import KeySet, PredecessorStructure, QueryStats, UniverseSpec


class XFastTrie(PredecessorStructure):
    __slots__ = ("bits", "universe", "leaves", "_index", "_levels", "_root")

    def __init__(self, keys: KeySet, universe: UniverseSpec):
        universe.check_key(keys.keys[-1])
        bits = universe.bits
        leaves = keys.keys
        levels: list[dict[int, list[int]]] = []
        for level in range(bits + 1):
            shift = bits - level
            table: dict[int, list[int]] = {}
            for k in leaves:
                p = k >> shift
                entry = table.get(p)
                if entry is None:
                    table[p] = [k, k]
                else:
                    entry[1] = k  # leaves ascend, so the last writer is the max
            levels.append(table)
        self.bits = bits
        self.universe = universe
        self.leaves = leaves
        self._index = {k: i for i, k in enumerate(leaves)}
        self._levels = levels
        self._root = levels[0][0]

    def __len__(self) -> int:
        return len(self.leaves)

    def predecessor(self, q: int) -> Optional[int]:
        self.universe.check_key(q)
        return self._search(q)[0]

    def predecessor_with_probes(self, q: int) -> tuple[Optional[int], int]:
        """Answer plus the number of prefix-table probes spent finding it."""
        self.universe.check_key(q)
        return self._search(q)

    def query_stats(self, q: int) -> QueryStats:
        answer, probes = self.predecessor_with_probes(q)
        return QueryStats(answer=answer, level_probes=probes)

    def _search(self, q: int) -> tuple[Optional[int], int]:
        bits = self.bits
        levels = self._levels
        probes = 0
        lo, hi = 0, bits
        entry = self._root
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            e = levels[mid].get(q >> (bits - mid))
            probes += 1
            if e is not None:
                lo = mid
                entry = e
            else:
                hi = mid - 1
        if lo == bits:
            return q, probes  # q itself is stored; weak predecessor
        if (q >> (bits - lo - 1)) & 1:
            return entry[1], probes
        i = self._index[entry[0]]
        return (self.leaves[i - 1] if i > 0 else None), probes

    def level_sizes(self) -> list[int]:
        return [len(t) for t in self._levels]

    def table_entries(self) -> int:
        """Total prefix-table entries across all levels (space audit)."""
        return sum(len(t) for t in self._levels)
