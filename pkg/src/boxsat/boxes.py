"""Box algebra: the three-valued geometry underneath the solver.

A *box* assigns one of three values to every variable position: T (the
coordinate is true), F (false), or the wildcard λ, which spans both values
of that coordinate.  A box therefore denotes an axis-aligned subset of the
assignment hypercube {0,1}^n.  Negated CNF clauses, learned constraints and
probe points are all boxes; a probe point is simply a box with no λ at all.

Internally a box is a pair of bit masks over n positions: ``mask`` marks the
non-λ positions, ``val`` the polarity of the fixed ones.  Position 0 (the
first variable in the active ordering) sits at the *most significant* bit so
that the integer value of a full point equals its rank in the depth-first
sweep order (F = left = 0, T = right = 1).
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Sequence


class BoxError(ValueError):
    """Misuse of the box algebra (length mismatch, undefined resolution)."""


class Trit(IntEnum):
    """One coordinate of a box.  Values double as ternary ranking digits."""

    LAMBDA = 1
    FALSE = 2
    TRUE = 3


_TRIT_CHARS = {Trit.LAMBDA: "-", Trit.FALSE: "F", Trit.TRUE: "T"}
_CHAR_TRITS = {"-": Trit.LAMBDA, "F": Trit.FALSE, "T": Trit.TRUE}


class Box:
    """Immutable trit vector over ``n`` variable positions."""

    __slots__ = ("n", "mask", "val")

    def __init__(self, n: int, mask: int, val: int):
        if n < 0:
            raise BoxError("negative box length")
        full = (1 << n) - 1
        if mask & ~full or val & ~mask:
            raise BoxError("mask/val bits out of range")
        self.n = n
        self.mask = mask
        self.val = val

    @classmethod
    def from_trits(cls, trits: Iterable[Trit]) -> "Box":
        mask = val = n = 0
        for t in trits:
            mask <<= 1
            val <<= 1
            if t is not Trit.LAMBDA:
                mask |= 1
                if t is Trit.TRUE:
                    val |= 1
            n += 1
        return cls(n, mask, val)

    @classmethod
    def parse(cls, text: str) -> "Box":
        """Build a box from a string like ``"TF-"`` ('-' is the wildcard)."""
        try:
            return cls.from_trits(_CHAR_TRITS[ch] for ch in text)
        except KeyError as exc:
            raise BoxError(f"bad trit character {exc.args[0]!r}") from None

    @classmethod
    def all_lambda(cls, n: int) -> "Box":
        return cls(n, 0, 0)

    @classmethod
    def point(cls, n: int, bits: int) -> "Box":
        """Full point whose sweep rank is ``bits`` (position 0 = high bit)."""
        full = (1 << n) - 1
        return cls(n, full, bits & full)

    # -- coordinate access ----------------------------------------------

    def trit(self, i: int) -> Trit:
        """Trit at 0-based position ``i``."""
        if not 0 <= i < self.n:
            raise BoxError(f"position {i} out of range for length {self.n}")
        bit = self.n - 1 - i
        if not (self.mask >> bit) & 1:
            return Trit.LAMBDA
        return Trit.TRUE if (self.val >> bit) & 1 else Trit.FALSE

    @property
    def trits(self) -> tuple[Trit, ...]:
        return tuple(self.trit(i) for i in range(self.n))

    @property
    def index(self) -> int:
        """1-based position of the last non-λ trit; 0 for the all-λ box."""
        if not self.mask:
            return 0
        return self.n - ((self.mask & -self.mask).bit_length() - 1)

    @property
    def fixed_count(self) -> int:
        return self.mask.bit_count()

    @property
    def lambda_count(self) -> int:
        return self.n - self.mask.bit_count()

    @property
    def is_point(self) -> bool:
        return self.mask == (1 << self.n) - 1

    # -- relations -------------------------------------------------------

    def contains(self, other: "Box") -> bool:
        """True iff every position of self equals other's or is λ."""
        if self.n != other.n:
            raise BoxError("containment needs equal lengths")
        return (self.mask & ~other.mask) == 0 and ((self.val ^ other.val) & self.mask) == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Box)
            and self.n == other.n
            and self.mask == other.mask
            and self.val == other.val
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask, self.val))

    def __repr__(self) -> str:
        return f"Box({''.join(_TRIT_CHARS[t] for t in self.trits)!r})"


def resolve(b: Box, c: Box) -> Box:
    """Resolve two boxes on their unique opposing position.

    The pivot (the one position where one box is T and the other F) becomes
    λ; every other position combines componentwise, a fixed value winning
    over λ.  Undefined unless exactly one opposing position exists.
    """
    if b.n != c.n:
        raise BoxError("resolution needs equal lengths")
    opposing = b.mask & c.mask & (b.val ^ c.val)
    if opposing == 0:
        raise BoxError("resolution undefined: no opposing position")
    if opposing & (opposing - 1):
        raise BoxError("resolution undefined: multiple opposing positions")
    mask = (b.mask | c.mask) & ~opposing
    return Box(b.n, mask, (b.val | c.val) & mask)


def tail_resolvable(b: Box, c: Box) -> bool:
    """True iff the boxes resolve *and* the pivot is the last non-λ of both.

    This is the restricted form the sweep solver performs: resolutions only
    ever peel the shared trailing position, so each result strictly shortens
    the box index.
    """
    if b.n != c.n:
        raise BoxError("resolvability needs equal lengths")
    opposing = b.mask & c.mask & (b.val ^ c.val)
    if opposing == 0 or opposing & (opposing - 1):
        return False
    return (b.mask & -b.mask) == opposing and (c.mask & -c.mask) == opposing


# -- sub-box ranking -----------------------------------------------------
#
# Sub-boxes of length <= 4 enumerate bijectively onto 0..120 via their trit
# digits (λ=1, F=2, T=3) read as a bijective base-3 numeral.  The ranks are
# the bit positions used by the cluster trie masks: 0 is the empty sub-box,
# 1..3 length one, 4..12 length two, 13..39 length three, 40..120 length
# four.

SUBBOX_RANKS = 121


def subbox_rank(trits: Sequence[Trit]) -> int:
    """Rank of a sub-box of length 0..4 in the 121-slot enumeration."""
    if len(trits) > 4:
        raise BoxError(f"sub-box too long for ranking: {len(trits)}")
    rank = 0
    for t in trits:
        rank = rank * 3 + int(t)
    return rank


def rank_to_trits(rank: int) -> tuple[Trit, ...]:
    """Inverse of :func:`subbox_rank`."""
    if not 0 <= rank < SUBBOX_RANKS:
        raise BoxError(f"rank out of range: {rank}")
    digits: list[Trit] = []
    while rank:
        d = rank % 3 or 3
        digits.append(Trit(d))
        rank = (rank - d) // 3
    return tuple(reversed(digits))
