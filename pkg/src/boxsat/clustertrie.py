"""Cluster trie: a set-of-boxes index queried by wide bitmask intersection.

Four trit positions collapse into one trie node (a *cluster*).  A cluster
holds two 128-bit masks: ``boxes_mask`` marks sub-boxes that terminate here
(one bit per slot of the 121-way enumeration), ``children_mask`` marks the
length-4 prefixes (slots 40..120) under which deeper boxes live.  Stored
sub-boxes are trimmed at the box's last non-λ position, so a slot's trit
string never ends in λ; everything after it is implicitly λ.

A containment query intersects each visited cluster's masks with a
precomputed per-input row listing every slot that could contain the input's
sub-box.  One intersection therefore replaces up to 16 individual trie-edge
probes.  Chains of clusters holding no boxes and only the all-λ child are
hopped over without touching the masks (the λ-skip).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .boxes import (
    SUBBOX_RANKS,
    Box,
    BoxError,
    Trit,
    rank_to_trits,
    subbox_rank,
)

CLUSTER_SPAN = 4
CHILD_SLOT_LOW = subbox_rank((Trit.LAMBDA,) * 4)  # 40, the all-λ prefix
_ALL_LAMBDA_CHILD_BIT = 1 << CHILD_SLOT_LOW

_RANK_TRITS = tuple(rank_to_trits(r) for r in range(SUBBOX_RANKS))


def _trimmed_length(trits: tuple[Trit, ...]) -> int:
    n = len(trits)
    while n and trits[n - 1] is Trit.LAMBDA:
        n -= 1
    return n


# Index each slot carries toward a box index: trailing λs do not count.
_RANK_INDEX = tuple(_trimmed_length(t) for t in _RANK_TRITS)


@dataclass(frozen=True)
class LookupTables:
    """Per-input-slot rows of containing box slots and coverable child slots."""

    box_containers: tuple[int, ...]
    child_containers: tuple[int, ...]


def _subbox_contains(a: tuple[Trit, ...], b: tuple[Trit, ...]) -> bool:
    # a contains b when a is no longer than b and matches it positionwise
    # (λ matches anything); a's implicit λ tail contains whatever follows.
    if len(a) > len(b):
        return False
    return all(x is Trit.LAMBDA or x is y for x, y in zip(a, b))


def _child_covers(prefix: tuple[Trit, ...], sub: tuple[Trit, ...]) -> bool:
    # A child prefix can lead to a containing box only if it contains the
    # λ-padded input sub-box on all four positions.
    for i, p in enumerate(prefix):
        s = sub[i] if i < len(sub) else Trit.LAMBDA
        if p is not Trit.LAMBDA and p is not s:
            return False
    return True


@lru_cache(maxsize=1)
def build_lookup_tables() -> LookupTables:
    """Generate both 121-row tables by exhaustive containment checks."""
    box_rows = []
    child_rows = []
    for v in range(SUBBOX_RANKS):
        sub = _RANK_TRITS[v]
        brow = crow = 0
        for j in range(SUBBOX_RANKS):
            if _subbox_contains(_RANK_TRITS[j], sub):
                brow |= 1 << j
            if j >= CHILD_SLOT_LOW and _child_covers(_RANK_TRITS[j], sub):
                crow |= 1 << j
        box_rows.append(brow)
        child_rows.append(crow)
    return LookupTables(tuple(box_rows), tuple(child_rows))


# Rank of a 4-trit field given its (mask bits, value bits) pair.
_PHI4 = [0] * 256
for _m in range(16):
    for _v in range(16):
        if _v & ~_m:
            continue
        _digits = []
        for _i in range(3, -1, -1):
            _digits.append(1 + ((_m >> _i) & 1) + ((_v >> _i) & 1))
        _r = 0
        for _d in _digits:
            _r = _r * 3 + _d
        _PHI4[(_m << 4) | _v] = _r
del _m, _v, _digits, _r, _d, _i


def _field_rank(mbits: int, vbits: int, length: int) -> int:
    rank = 0
    for i in range(length - 1, -1, -1):
        rank = rank * 3 + 1 + ((mbits >> i) & 1) + ((vbits >> i) & 1)
    return rank


class Cluster:
    __slots__ = ("boxes_mask", "children_mask", "children", "depth")

    def __init__(self, depth: int):
        self.boxes_mask = 0
        self.children_mask = 0
        self.children: dict[int, Cluster] = {}
        self.depth = depth


class BoxDatabase:
    """Stores length-``n`` boxes; answers containment queries over them.

    ``insert`` is a no-op when some stored box already contains the new one
    (the containment short-circuit); the reverse direction is *not* checked,
    so a newly inserted box may coexist with boxes it subsumes.
    """

    def __init__(self, n: int, lambda_skip: bool = True):
        if n < 0:
            raise BoxError("negative variable count")
        self.n = n
        self.lambda_skip = lambda_skip
        self.root = Cluster(0)
        self.box_count = 0
        self.cluster_visits = 0  # clusters whose masks were intersected
        self._tables = build_lookup_tables()
        self._last_depth = max(0, (n - 1) // CLUSTER_SPAN)

    @property
    def cluster_count(self) -> int:
        return self._last_depth + 1

    def __len__(self) -> int:
        return self.box_count

    # -- helpers ---------------------------------------------------------

    def _check_length(self, b: Box):
        if b.n != self.n:
            raise BoxError(f"box length {b.n} != database length {self.n}")

    def _query_ranks(self, q: Box) -> list[int]:
        """Per-depth slot ranks of the query's sub-boxes."""
        n, mask, val = self.n, q.mask, q.val
        ranks = []
        for d in range(self._last_depth + 1):
            length = min(CLUSTER_SPAN, n - CLUSTER_SPAN * d)
            shift = n - CLUSTER_SPAN * d - length
            m = (mask >> shift) & ((1 << length) - 1)
            v = (val >> shift) & ((1 << length) - 1)
            if length == CLUSTER_SPAN:
                ranks.append(_PHI4[(m << 4) | v])
            else:
                ranks.append(_field_rank(m, v, length))
        return ranks

    def _rebuild(self, path: list[int], slot: int) -> Box:
        trits: list[Trit] = []
        for p in path:
            trits.extend(_RANK_TRITS[p])
        trits.extend(_RANK_TRITS[slot])
        trits.extend([Trit.LAMBDA] * (self.n - len(trits)))
        return Box.from_trits(trits)

    @staticmethod
    def _best_slot(hits: int) -> int:
        """Hit slot with the smallest index (most trailing λs), then rank."""
        best = -1
        best_key = None
        while hits:
            low = hits & -hits
            hits ^= low
            slot = low.bit_length() - 1
            key = (_RANK_INDEX[slot], slot)
            if best_key is None or key < best_key:
                best, best_key = slot, key
        return best

    # -- operations ------------------------------------------------------

    def insert(self, b: Box) -> None:
        self._check_length(b)
        if self.find_containing(b) is not None:
            return  # already covered; leave the structure untouched
        k = b.index
        if k == 0:
            self.root.boxes_mask |= 1  # slot 0: the all-λ box
            self.box_count += 1
            return
        terminal = (k - 1) // CLUSTER_SPAN
        n, mask, val = self.n, b.mask, b.val
        cluster = self.root
        for d in range(terminal):
            shift = n - CLUSTER_SPAN * (d + 1)
            m = (mask >> shift) & 0xF
            v = (val >> shift) & 0xF
            slot = _PHI4[(m << 4) | v]
            child = cluster.children.get(slot)
            if child is None:
                child = Cluster(d + 1)
                cluster.children[slot] = child
                cluster.children_mask |= 1 << slot
            cluster = child
        local_len = k - CLUSTER_SPAN * terminal
        shift = n - k
        m = (mask >> shift) & ((1 << local_len) - 1)
        v = (val >> shift) & ((1 << local_len) - 1)
        cluster.boxes_mask |= 1 << _field_rank(m, v, local_len)
        self.box_count += 1

    def find_containing(self, q: Box) -> Box | None:
        """Some stored box containing ``q``, or None.

        Greedy per cluster: a box hit with the smallest index wins outright;
        otherwise matching children are scanned in increasing slot order and
        the first hit found below is returned.
        """
        self._check_length(q)
        if self.n == 0:
            self.cluster_visits += 1
            return Box.all_lambda(0) if self.root.boxes_mask & 1 else None
        ranks = self._query_ranks(q)
        box_tab = self._tables.box_containers
        child_tab = self._tables.child_containers
        last = self._last_depth
        skip = self.lambda_skip
        path: list[int] = []

        def descend(cluster: Cluster, depth: int) -> Box | None:
            hops = 0
            while (
                skip
                and depth < last
                and cluster.boxes_mask == 0
                and cluster.children_mask == _ALL_LAMBDA_CHILD_BIT
            ):
                path.append(CHILD_SLOT_LOW)
                cluster = cluster.children[CHILD_SLOT_LOW]
                depth += 1
                hops += 1
            self.cluster_visits += 1
            result = None
            hits = cluster.boxes_mask & box_tab[ranks[depth]]
            if hits:
                result = self._rebuild(path, self._best_slot(hits))
            elif depth < last:
                kids = cluster.children_mask & child_tab[ranks[depth]]
                while kids and result is None:
                    low = kids & -kids
                    kids ^= low
                    slot = low.bit_length() - 1
                    path.append(slot)
                    result = descend(cluster.children[slot], depth + 1)
                    path.pop()
            if hops:
                del path[-hops:]
            return result

        return descend(self.root, 0)

    def all_containing(self, q: Box, include_shadowed: bool = False) -> list[Box]:
        """All stored boxes containing ``q`` reachable by the mask walk.

        By default a cluster with box hits does not descend further, so
        deeper containing boxes shadowed by a hit are omitted.  Pass
        ``include_shadowed=True`` to descend regardless and return the full
        containing set.
        """
        self._check_length(q)
        out: list[Box] = []
        if self.n == 0:
            self.cluster_visits += 1
            if self.root.boxes_mask & 1:
                out.append(Box.all_lambda(0))
            return out
        ranks = self._query_ranks(q)
        box_tab = self._tables.box_containers
        child_tab = self._tables.child_containers
        last = self._last_depth
        skip = self.lambda_skip
        path: list[int] = []

        def gather(cluster: Cluster, depth: int) -> None:
            hops = 0
            while (
                skip
                and depth < last
                and cluster.boxes_mask == 0
                and cluster.children_mask == _ALL_LAMBDA_CHILD_BIT
            ):
                path.append(CHILD_SLOT_LOW)
                cluster = cluster.children[CHILD_SLOT_LOW]
                depth += 1
                hops += 1
            self.cluster_visits += 1
            hits = cluster.boxes_mask & box_tab[ranks[depth]]
            h = hits
            while h:
                low = h & -h
                h ^= low
                out.append(self._rebuild(path, low.bit_length() - 1))
            if (not hits or include_shadowed) and depth < last:
                kids = cluster.children_mask & child_tab[ranks[depth]]
                while kids:
                    low = kids & -kids
                    kids ^= low
                    slot = low.bit_length() - 1
                    path.append(slot)
                    gather(cluster.children[slot], depth + 1)
                    path.pop()
            if hops:
                del path[-hops:]

        gather(self.root, 0)
        return out

    # -- introspection ---------------------------------------------------

    def boxes(self):
        """Yield every stored box (depth-first, increasing slot order)."""
        path: list[int] = []

        def walk(cluster: Cluster):
            m = cluster.boxes_mask
            while m:
                low = m & -m
                m ^= low
                yield self._rebuild(path, low.bit_length() - 1)
            m = cluster.children_mask
            while m:
                low = m & -m
                m ^= low
                slot = low.bit_length() - 1
                path.append(slot)
                yield from walk(cluster.children[slot])
                path.pop()

        yield from walk(self.root)

    def dump(self) -> str:
        """Textual listing, one ``depth:slot`` line per set bit.

        Box bits print bare; child bits carry a ``>`` suffix.  Depth-first,
        increasing slot order, so equal structures dump identically.
        """
        lines: list[str] = []

        def walk(cluster: Cluster, depth: int):
            m = cluster.boxes_mask
            while m:
                low = m & -m
                m ^= low
                lines.append(f"{depth}:{low.bit_length() - 1}")
            m = cluster.children_mask
            while m:
                low = m & -m
                m ^= low
                slot = low.bit_length() - 1
                lines.append(f"{depth}:{slot}>")
                walk(cluster.children[slot], depth + 1)

        walk(self.root, 0)
        return "\n".join(lines)

    def total_set_bits(self) -> int:
        total = 0
        stack = [self.root]
        while stack:
            c = stack.pop()
            total += c.boxes_mask.bit_count() + c.children_mask.bit_count()
            stack.extend(c.children.values())
        return total
