"""Bucketed trie: prefix-level search over bucket minima, O(n) total space.

The key set is partitioned into consecutive sorted buckets whose sizes stay
inside [ceil(bits/4), 2*bits] (a single undersized bucket is allowed when the
whole set is small).  Each bucket is keyed by its minimum, and an x-fast trie
over those minima routes a query to the one bucket that can contain its
predecessor; a binary search inside the bucket finishes.

Updates only touch bucket contents.  The prefix trie is static, so whenever
the set of bucket minima changes (split, merge, removal or replacement of a
minimum) it is rebuilt from scratch; it holds ~n/bits keys, which keeps the
rebuild cheap, and the size band makes structural changes infrequent.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterator, Optional

from .core import KeySet, PredecessorStructure, QueryStats, UniverseSpec
from .xfast import XFastTrie


class YFastTrie(PredecessorStructure):
    __slots__ = ("universe", "bits", "_min_size", "_max_size", "_reps", "_buckets",
                 "_rep_trie", "_size")

    def __init__(self, keys: KeySet, universe: UniverseSpec):
        universe.check_key(keys.keys[-1])
        self.universe = universe
        self.bits = universe.bits
        self._min_size = max(1, -(-self.bits // 4))
        self._max_size = 2 * self.bits
        ks = keys.keys
        reps: list[int] = []
        buckets: dict[int, list[int]] = {}
        chunk = self.bits
        for i in range(0, len(ks), chunk):
            part = list(ks[i:i + chunk])
            if reps and len(part) < self._min_size:
                buckets[reps[-1]].extend(part)
            else:
                reps.append(part[0])
                buckets[part[0]] = part
        self._reps = reps
        self._buckets = buckets
        self._size = len(ks)
        self._rep_trie: Optional[XFastTrie] = XFastTrie(KeySet(reps), universe)

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[int]:
        for rep in self._reps:
            yield from self._buckets[rep]

    def __contains__(self, key: int) -> bool:
        if self._size == 0:
            return False
        rep = self._rep_trie.predecessor(key)
        if rep is None:
            return False
        b = self._buckets[rep]
        i = bisect_right(b, key) - 1
        return i >= 0 and b[i] == key

    def predecessor(self, q: int) -> Optional[int]:
        self.universe.check_key(q)
        return self._search(q)[0]

    def predecessor_with_probes(self, q: int) -> tuple[Optional[int], int]:
        self.universe.check_key(q)
        return self._search(q)

    def query_stats(self, q: int) -> QueryStats:
        answer, probes = self.predecessor_with_probes(q)
        return QueryStats(answer=answer, level_probes=probes)

    def _search(self, q: int) -> tuple[Optional[int], int]:
        if self._size == 0:
            return None, 0
        rep, probes = self._rep_trie._search(q)
        if rep is None:
            return None, probes
        b = self._buckets[rep]
        return b[bisect_right(b, q) - 1], probes

    def insert(self, x: int) -> None:
        """Add key x; inserting a present key is a no-op."""
        self.universe.check_key(x)
        if self._size == 0:
            self._reps = [x]
            self._buckets = {x: [x]}
            self._size = 1
            self._rebuild()
            return
        rep = self._rep_trie.predecessor(x)
        if rep is None:
            # below every bucket minimum: x leads the first bucket
            old = self._reps[0]
            b = self._buckets.pop(old)
            b.insert(0, x)
            self._reps[0] = x
            self._buckets[x] = b
            self._size += 1
            if len(b) > self._max_size:
                self._split(0)
            self._rebuild()
            return
        b = self._buckets[rep]
        i = bisect_right(b, x)
        if b[i - 1] == x:
            return
        b.insert(i, x)
        self._size += 1
        if len(b) > self._max_size:
            self._split(bisect_left(self._reps, rep))
            self._rebuild()

    def delete(self, x: int) -> None:
        """Remove key x; raises KeyError if absent."""
        self.universe.check_key(x)
        rep = self._rep_trie.predecessor(x) if self._size else None
        if rep is None:
            raise KeyError(x)
        b = self._buckets[rep]
        i = bisect_right(b, x) - 1
        if i < 0 or b[i] != x:
            raise KeyError(x)
        del b[i]
        self._size -= 1
        pos = bisect_left(self._reps, rep)
        changed = False
        if not b:
            del self._buckets[rep]
            del self._reps[pos]
            changed = True
        else:
            if i == 0:
                # removed the bucket minimum; re-key under the new minimum
                del self._buckets[rep]
                self._reps[pos] = b[0]
                self._buckets[b[0]] = b
                changed = True
            if len(b) < self._min_size and len(self._reps) > 1:
                self._merge(pos)
                changed = True
        if changed:
            self._rebuild()

    def _split(self, pos: int) -> None:
        b = self._buckets[self._reps[pos]]
        mid = len(b) // 2
        upper = b[mid:]
        del b[mid:]
        self._reps.insert(pos + 1, upper[0])
        self._buckets[upper[0]] = upper

    def _merge(self, pos: int) -> None:
        if pos > 0:
            keep = pos - 1
            gone = pos
        else:
            keep = 0
            gone = 1
        kept = self._buckets[self._reps[keep]]
        kept.extend(self._buckets.pop(self._reps[gone]))
        del self._reps[gone]
        if len(kept) > self._max_size:
            self._split(keep)

    def _rebuild(self) -> None:
        if self._reps:
            self._rep_trie = XFastTrie(KeySet(self._reps), self.universe)
        else:
            self._rep_trie = None

    # audit helpers

    def representatives(self) -> tuple[int, ...]:
        return tuple(self._reps)

    def bucket_sizes(self) -> list[int]:
        return [len(self._buckets[r]) for r in self._reps]

    def size_band(self) -> tuple[int, int]:
        return self._min_size, self._max_size

    def table_entries(self) -> int:
        """Prefix-table entries of the representative trie plus bucket slots."""
        trie = self._rep_trie.table_entries() if self._rep_trie is not None else 0
        return trie + self._size
