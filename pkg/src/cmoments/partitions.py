"""Set partition families: all, non-crossing, interval and monotone.

Partitions are canonicalized with blocks sorted internally and ordered by
least element; enumeration output is sorted by that canonical key so results
are deterministic and diffable.

Monotone (ordered non-crossing) partitions carry a labeling of blocks by
1..k that must increase from outer to nested-inner blocks: if V sits
strictly inside W then order(V) > order(W).  The nesting relation on blocks
of a non-crossing partition forms a forest, so the number of admissible
labelings is k! divided by the product of subtree sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import SizeLimitError

PARTITION_LIMIT = 12
MONOTONE_LIMIT = 10


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..n} into disjoint non-empty blocks."""

    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(
            sorted((tuple(sorted(int(e) for e in b)) for b in self.blocks))
        )
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            for e in b:
                if e in seen:
                    raise ValueError(f"element {e} appears twice")
                seen.add(e)
        if seen != set(range(1, self.n + 1)):
            raise ValueError(f"blocks do not cover 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def size(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> tuple:
        return tuple(len(b) for b in self.blocks)


@dataclass(frozen=True)
class OrderedNCPartition:
    """A non-crossing partition with an admissible block labeling.

    ``order[i]`` is the label (1..k) of ``base.blocks[i]``.
    """

    base: SetPartition
    order: tuple

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        k = self.base.size
        if sorted(order) != list(range(1, k + 1)):
            raise ValueError("order must be a bijection onto 1..k")
        if not is_noncrossing(self.base):
            raise ValueError("base partition is crossing")
        parents = nesting_parents(self.base)
        for child, parent in enumerate(parents):
            if parent is not None and order[child] <= order[parent]:
                raise ValueError(
                    "nested block must receive a larger label than its parent"
                )
        object.__setattr__(self, "order", order)


def _check_limit(n: int, limit: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise SizeLimitError(f"n = {n} exceeds the enumeration limit {limit}")


def is_noncrossing(p: SetPartition) -> bool:
    """Two blocks cross when their elements interleave a<b<c<d alternately."""
    blocks = p.blocks
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if _blocks_cross(blocks[i], blocks[j]):
                return False
    return True


def _blocks_cross(v: tuple, w: tuple) -> bool:
    # merge the two sorted blocks and count label alternations; a crossing
    # is exactly an alternation pattern of length >= 4 (VWVW or WVWV)
    labels = sorted([(e, 0) for e in v] + [(e, 1) for e in w])
    runs = 1
    for (_, a), (_, b) in zip(labels, labels[1:]):
        if a != b:
            runs += 1
            if runs >= 4:
                return True
    return False


def nesting_parents(p: SetPartition) -> list:
    """Immediate nesting parent of each block (index) or None for roots.

    The parent of V is the tightest block W with min W < min V and
    max W > max V.  Well-defined for non-crossing partitions, where
    enclosing blocks are totally ordered by span inclusion.
    """
    blocks = p.blocks
    parents = []
    for i, b in enumerate(blocks):
        lo, hi = b[0], b[-1]
        best = None
        for j, w in enumerate(blocks):
            if j == i:
                continue
            if w[0] < lo and w[-1] > hi:
                if best is None or w[0] > blocks[best][0]:
                    best = j
        parents.append(best)
    return parents


def monotone_order_count(p: SetPartition) -> int:
    """Number of admissible labelings of a non-crossing partition.

    Linear extensions of the nesting forest: k! / product of subtree sizes.
    """
    parents = nesting_parents(p)
    k = p.size
    subtree = [1] * k
    # accumulate child counts from innermost outward; sorting by descending
    # span start visits children before parents
    order = sorted(range(k), key=lambda i: p.blocks[i][0], reverse=True)
    for i in order:
        if parents[i] is not None:
            subtree[parents[i]] += subtree[i]
    denom = 1
    for s in subtree:
        denom *= s
    return math.factorial(k) // denom


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_partitions(n: int) -> list:
    """All partitions of {1..n}, canonical order, Bell(n) of them."""
    _check_limit(n, PARTITION_LIMIT)
    out = []

    def grow(element, blocks):
        if element > n:
            out.append(SetPartition(n, tuple(tuple(b) for b in blocks)))
            return
        for b in blocks:
            b.append(element)
            grow(element + 1, blocks)
            b.pop()
        blocks.append([element])
        grow(element + 1, blocks)
        blocks.pop()

    grow(1, [])
    out.sort(key=lambda p: p.blocks)
    return out


@lru_cache(maxsize=None)
def _nc_blocks(start: int, length: int) -> tuple:
    """Non-crossing partitions of the run start..start+length-1 as block tuples.

    The block of the least element splits the remaining elements into
    independent contiguous gaps, each partitioned recursively; memoization
    keys on the run itself since every gap is again a contiguous run.
    """
    if length == 0:
        return ((),)
    first = start
    rest = tuple(range(start + 1, start + length))
    results = []
    for mask in range(1 << len(rest)):
        chosen = tuple(rest[i] for i in range(len(rest)) if mask >> i & 1)
        block = (first, *chosen)
        partials = [()]
        bounds = (*block, start + length)
        for lo, hi in zip(bounds, bounds[1:]):
            gap_len = hi - lo - 1
            if gap_len:
                sub = _nc_blocks(lo + 1, gap_len)
                partials = [p + q for p in partials for q in sub]
        results.extend((block,) + p for p in partials)
    return tuple(results)


def enumerate_noncrossing(n: int) -> list:
    """Non-crossing partitions of {1..n}, Catalan(n) of them."""
    _check_limit(n, PARTITION_LIMIT)
    out = [SetPartition(n, blocks) for blocks in _nc_blocks(1, n)]
    out.sort(key=lambda p: p.blocks)
    return out


def enumerate_interval(n: int) -> list:
    """Partitions of {1..n} whose blocks are contiguous runs, 2**(n-1) of them."""
    _check_limit(n, PARTITION_LIMIT)
    out = []
    for mask in range(1 << (n - 1)):
        blocks, start = [], 1
        for i in range(1, n):
            if mask >> (i - 1) & 1:
                blocks.append(tuple(range(start, i + 1)))
                start = i + 1
        blocks.append(tuple(range(start, n + 1)))
        out.append(SetPartition(n, tuple(blocks)))
    out.sort(key=lambda p: p.blocks)
    return out


def enumerate_monotone(n: int) -> list:
    """All admissibly labeled non-crossing partitions of {1..n}.

    Labelings are generated as linear extensions of the nesting forest
    (labels grow from outer blocks to nested-inner blocks).
    """
    _check_limit(n, MONOTONE_LIMIT)
    out = []
    for p in enumerate_noncrossing(n):
        parents = nesting_parents(p)
        k = p.size
        order = [0] * k

        def extend(label, placed):
            if label > k:
                out.append(OrderedNCPartition(p, tuple(order)))
                return
            for i in range(k):
                if order[i] == 0 and (parents[i] is None or parents[i] in placed):
                    order[i] = label
                    placed.add(i)
                    extend(label + 1, placed)
                    placed.discard(i)
                    order[i] = 0

        extend(1, set())
    out.sort(key=lambda q: (q.base.blocks, q.order))
    return out
