"""The inverted-pair swap process.

Any two books standing in the wrong relative order may be exchanged. Each
such swap removes at least one inversion, so the process ends after at most
``n(n-1)/2`` swaps; the reversed shelf with adjacent swaps uses exactly that
many. ``adjacent=True`` restricts every operation below to neighbouring
positions.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .errors import IllegalSwap, LimitExceeded
from .shelf import Shelf, is_sorted

DEFAULT_INVERSION_LIMIT = 8


@dataclass(frozen=True)
class SwapRecord:
    pos_i: int
    pos_j: int
    book_i: int
    book_j: int


@dataclass(frozen=True)
class SwapGame:
    initial: Shelf
    swaps: tuple[SwapRecord, ...]
    final: Shelf

    @property
    def length(self) -> int:
        return len(self.swaps)


def _inversions(books: tuple[int, ...]) -> int:
    n = len(books)
    return sum(1 for i in range(n) for j in range(i + 1, n) if books[i] > books[j])


def inversion_count(s: Shelf) -> int:
    return _inversions(s.books)


def _swapped(books: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    # 0-based i < j
    return books[:i] + (books[j],) + books[i + 1:j] + (books[i],) + books[j + 1:]


def _legal_swaps(books: tuple[int, ...], adjacent: bool = False) -> Iterator[tuple[int, int]]:
    n = len(books)
    for i in range(n - 1):
        for j in (range(i + 1, i + 2) if adjacent else range(i + 1, n)):
            if books[i] > books[j]:
                yield i, j


def apply_swap(s: Shelf, pos_i: int, pos_j: int) -> tuple[Shelf, SwapRecord]:
    n = s.n
    if not (1 <= pos_i < pos_j <= n):
        raise IllegalSwap(f"need 1 <= pos_i < pos_j <= {n}, got ({pos_i}, {pos_j})")
    bi, bj = s.books[pos_i - 1], s.books[pos_j - 1]
    if bi < bj:
        raise IllegalSwap(f"books {bi} and {bj} at positions {pos_i},{pos_j} are not inverted")
    return (Shelf._trusted(_swapped(s.books, pos_i - 1, pos_j - 1)),
            SwapRecord(pos_i, pos_j, bi, bj))


def replay_swaps(s: Shelf, pairs) -> SwapGame:
    cur, records = s, []
    for i, j in pairs:
        cur, rec = apply_swap(cur, i, j)
        records.append(rec)
    return SwapGame(s, tuple(records), cur)


def max_swap_game(n: int) -> SwapGame:
    """Bubble sort of the reversed shelf: ``n(n-1)/2`` adjacent swaps."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cur = Shelf(tuple(range(n, 0, -1)))
    records = []
    for end in range(n, 1, -1):
        for p in range(1, end):
            if cur.books[p - 1] > cur.books[p]:
                cur, rec = apply_swap(cur, p, p + 1)
                records.append(rec)
    return SwapGame(Shelf(tuple(range(n, 0, -1))), tuple(records), cur)


def _check(n: int, limit: int, allow_unsafe: bool) -> None:
    if n > limit and not allow_unsafe:
        raise LimitExceeded(n, limit, "inversion search")


def min_sort_length(s: Shelf, adjacent: bool = False, limit: int = DEFAULT_INVERSION_LIMIT,
                    allow_unsafe: bool = False) -> int:
    """Fewest inverted-pair swaps that sort ``s`` (breadth-first search)."""
    _check(s.n, limit, allow_unsafe)
    target = tuple(range(1, s.n + 1))
    dist = {s.books: 0}
    queue = deque([s.books])
    while queue:
        books = queue.popleft()
        if books == target:
            return dist[books]
        for i, j in _legal_swaps(books, adjacent):
            nxt = _swapped(books, i, j)
            if nxt not in dist:
                dist[nxt] = dist[books] + 1
                queue.append(nxt)
    raise AssertionError("identity unreachable")  # pragma: no cover


def min_sort_table(n: int, adjacent: bool = False, limit: int = DEFAULT_INVERSION_LIMIT,
                   allow_unsafe: bool = False) -> dict[tuple[int, ...], int]:
    """Minimum swap count for every shelf, by one backward BFS from the identity.

    A backward step exchanges a pair that is currently in order.
    """
    _check(n, limit, allow_unsafe)
    start = tuple(range(1, n + 1))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        books = queue.popleft()
        for i in range(n - 1):
            for j in (range(i + 1, i + 2) if adjacent else range(i + 1, n)):
                if books[i] < books[j]:
                    prev = _swapped(books, i, j)
                    if prev not in dist:
                        dist[prev] = dist[books] + 1
                        queue.append(prev)
    return dist


def _longest(books: tuple[int, ...], memo: dict, adjacent: bool) -> int:
    # recursion depth is bounded by the inversion count, at most n(n-1)/2
    if books not in memo:
        memo[books] = max((1 + _longest(_swapped(books, i, j), memo, adjacent)
                           for i, j in _legal_swaps(books, adjacent)), default=0)
    return memo[books]


def swap_longest_game(s: Shelf, adjacent: bool = False, limit: int = DEFAULT_INVERSION_LIMIT,
                      allow_unsafe: bool = False, memo: dict | None = None) -> int:
    """Most swaps an adversary can force before the shelf is sorted."""
    _check(s.n, limit, allow_unsafe)
    return _longest(s.books, {} if memo is None else memo, adjacent)


def cycle_count(s: Shelf) -> int:
    """Cycles of the permutation position -> book, fixed points included."""
    seen = [False] * (s.n + 1)
    cycles = 0
    for start in range(1, s.n + 1):
        if not seen[start]:
            cycles += 1
            p = start
            while not seen[p]:
                seen[p] = True
                p = s.books[p - 1]
    return cycles


@dataclass(frozen=True)
class InversionRow:
    rank: int
    shelf: Shelf
    inversion_count: int
    min_sort_length: int
    swap_longest_game: int
    cycle_bound: int


def inversion_table(n: int, adjacent: bool = False, limit: int = DEFAULT_INVERSION_LIMIT,
                    allow_unsafe: bool = False) -> list[InversionRow]:
    """One row per shelf in rank (lexicographic) order."""
    _check(n, limit, allow_unsafe)
    shortest = min_sort_table(n, adjacent, limit, allow_unsafe)
    memo: dict = {}
    rows = []
    for r, books in enumerate(itertools.permutations(range(1, n + 1))):
        s = Shelf._trusted(books)
        rows.append(InversionRow(
            rank=r, shelf=s, inversion_count=_inversions(books),
            min_sort_length=shortest[books],
            swap_longest_game=_longest(books, memo, adjacent),
            cycle_bound=n - cycle_count(s),
        ))
    return rows


def summarize(rows: list[InversionRow]) -> dict:
    """Distribution of exact minima and how they compare with ``n - cycles``."""
    n = rows[0].shelf.n if rows else 0
    dist: dict[int, int] = {}
    for row in rows:
        dist[row.min_sort_length] = dist.get(row.min_sort_length, 0) + 1
    return {
        "n": n,
        "shelves": len(rows),
        "max_min_sort_length": max((r.min_sort_length for r in rows), default=0),
        "min_sort_length_distribution": dict(sorted(dist.items())),
        "cycle_bound_agreements": sum(r.min_sort_length == r.cycle_bound for r in rows),
        "cycle_bound_counterexamples": [str(r.shelf) for r in rows
                                        if r.min_sort_length != r.cycle_bound],
        "longest_equals_inversions": sum(r.swap_longest_game == r.inversion_count for r in rows),
        "sorted_shelves": sum(is_sorted(r.shelf) for r in rows),
    }
