"""Two-row lamp semi-invariant and the move-count bounds it yields.

Row 1, lamp ``i`` (``1 <= i <= n-1``) is lit iff book ``i`` stands in one of
the first ``i`` positions. Row 2, lamp ``i`` is lit iff book ``n+1-i`` stands
in one of the last ``i`` positions. Reading each row as a binary number with
lamp 1 as the most significant bit gives ``L`` and ``R``. Neither number ever
decreases, and every move strictly increases the one on the side the book
travelled towards, so ``L + R`` is a strictly increasing potential bounded by
``2**n - 2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import LimitExceeded
from .shelf import Direction, MoveRecord, Shelf

DEFAULT_ENUMERATION_LIMIT = 9


@dataclass(frozen=True)
class LampRows:
    row1: tuple[bool, ...]
    row2: tuple[bool, ...]


@dataclass(frozen=True)
class Potential:
    L: int
    R: int
    rows: LampRows | None = field(default=None, compare=False, repr=False)

    @property
    def total(self) -> int:
        return self.L + self.R

    def as_dict(self) -> dict[str, int]:
        return {"L": self.L, "R": self.R}


@dataclass(frozen=True)
class StepVerdict:
    l_nondecreasing: bool
    r_nondecreasing: bool
    left_strict: bool
    right_strict: bool

    @property
    def passed(self) -> bool:
        return (self.l_nondecreasing and self.r_nondecreasing
                and self.left_strict and self.right_strict)

    def __bool__(self) -> bool:
        return self.passed


def lamp_rows(s: Shelf) -> LampRows:
    books = s.books
    n = len(books)
    pos = [0] * (n + 1)
    for p, b in enumerate(books, 1):
        pos[b] = p
    row1 = tuple(pos[i] <= i for i in range(1, n))
    row2 = tuple(pos[n + 1 - i] >= n + 1 - i for i in range(1, n))
    return LampRows(row1, row2)


def rows_to_int(row: tuple[bool, ...]) -> int:
    value = 0
    for lit in row:
        value = (value << 1) | lit
    return value


def potential(s: Shelf) -> Potential:
    rows = lamp_rows(s)
    return Potential(rows_to_int(rows.row1), rows_to_int(rows.row2), rows)


def potential_pair(books: tuple[int, ...]) -> tuple[int, int]:
    """(L, R) straight from a raw tuple; the hot path for searches and replays."""
    n = len(books)
    L = R = 0
    for p, b in enumerate(books, 1):
        if b < n and p <= b:
            L |= 1 << (n - 1 - b)
        if b > 1 and p >= b:
            # book b is lamp n+1-b of row 2
            R |= 1 << (b - 2)
    return L, R


def span_pair(books: tuple[int, ...], lo: int, hi: int) -> tuple[int, int]:
    """Lamp bits contributed by the books at positions ``lo..hi`` (1-based).

    A move only disturbs the positions between its source and target, so
    ``potential_pair`` of the new shelf is the old value with this span's
    contribution swapped out.
    """
    n = len(books)
    L = R = 0
    for p in range(lo, hi + 1):
        b = books[p - 1]
        if b < n and p <= b:
            L |= 1 << (n - 1 - b)
        if b > 1 and p >= b:
            R |= 1 << (b - 2)
    return L, R


def moved_pair(books: tuple[int, ...], after: tuple[int, ...], pair: tuple[int, int],
               lo: int, hi: int) -> tuple[int, int]:
    """Potential of ``after`` given ``pair`` = potential of ``books`` and the moved span."""
    bl, br = span_pair(books, lo, hi)
    al, ar = span_pair(after, lo, hi)
    # lamps outside the span are untouched, so clearing and setting bits is exact
    return (pair[0] & ~bl) | al, (pair[1] & ~br) | ar


def max_lamp_value(n: int) -> int:
    return (1 << (n - 1)) - 1 if n >= 2 else 0


def sum_ceiling(n: int) -> int:
    """Largest possible L + R, i.e. ``2**n - 2`` (0 for n <= 1)."""
    return 2 * max_lamp_value(n)


def remaining_bound(s: Shelf) -> int:
    L, R = potential_pair(s.books)
    return sum_ceiling(len(s.books)) - (L + R)


def ceil_pow2_half(n: int) -> int:
    """Exact ``ceil(2**(n/2))`` in integers."""
    if n % 2 == 0:
        return 1 << (n // 2)
    # 2**(n/2) = sqrt(2**n) is irrational for odd n, so ceil = isqrt + 1
    return math.isqrt(1 << n) + 1


def improved_upper_bound(n: int) -> int:
    """Integer form of the improved move bound: ``2**n - ceil(2**(n/2))``."""
    return (1 << n) - ceil_pow2_half(n)


def construction_lower_bound(n: int) -> int:
    return (1 << (n - 1)) - 1 if n >= 1 else 0


def min_initial_potential(n: int, limit: int = DEFAULT_ENUMERATION_LIMIT,
                          exclude_identity: bool = False) -> int:
    """Exact minimum of L + R over every shelf of size ``n``.

    The identity is included unless ``exclude_identity``; it carries the
    maximal sum so it only matters for n <= 1.
    """
    if n > limit:
        raise LimitExceeded(n, limit, "potential enumeration")
    if n <= 1:
        return 0
    identity = tuple(range(1, n + 1))
    best = None
    for books in itertools.permutations(identity):
        if exclude_identity and books == identity:
            continue
        L, R = potential_pair(books)
        if best is None or L + R < best:
            best = L + R
    return best


def check_step(before: Potential, after: Potential, mv: MoveRecord) -> StepVerdict:
    left = mv.direction is Direction.LEFT
    return StepVerdict(
        l_nondecreasing=after.L >= before.L,
        r_nondecreasing=after.R >= before.R,
        left_strict=(not left) or after.L > before.L,
        right_strict=left or after.R > before.R,
    )
