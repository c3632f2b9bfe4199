"""Librarian policies and complete games.

The process itself is nondeterministic: any misplaced book may be moved.
A strategy resolves that choice. ``RANDOM`` draws uniformly from the
misplaced books using numpy's PCG64 generator, so a (shelf, seed) pair always
replays the same game.
"""

from __future__ import annotations

import enum

import numpy as np

from . import _kernels as _k
from .errors import BoundViolation, LimitExceeded, NoMove
from .game import GameTrace
from .potential import Potential, moved_pair, potential_pair, sum_ceiling
from .search import DEFAULT_SEARCH_LIMIT, table_for
from .shelf import MoveRecord, Shelf, move_books

RNG_NAME = "numpy.random.PCG64"


class StrategyId(str, enum.Enum):
    LEFTMOST = "leftmost"
    RIGHTMOST_POS = "rightmost"
    RANDOM = "random"
    GREEDY_MIN = "greedy"
    ORACLE = "oracle"

    @classmethod
    def parse(cls, name: str) -> StrategyId:
        try:
            return cls(name.lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown strategy {name!r} (choose from {choices})") from None


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _misplaced(books: tuple[int, ...]) -> list[int]:
    return sorted(b for p, b in enumerate(books, 1) if b != p)


def _greedy_py(books: tuple[int, ...], candidates: list[int]) -> int:
    # ascending candidates + strict '<' keeps the smallest id on ties
    best, best_sum = None, None
    for b in candidates:
        total = sum(potential_pair(move_books(books, b)))
        if best_sum is None or total < best_sum:
            best, best_sum = b, total
    return best


def _next_book(strategy: StrategyId, books: tuple[int, ...],
               rng: np.random.Generator | None,
               candidates: list[int] | None = None) -> int:
    if candidates is None:
        candidates = _misplaced(books)
    if not candidates:
        raise NoMove(f"shelf {books} is sorted")
    if strategy is StrategyId.LEFTMOST:
        return candidates[0]
    if strategy is StrategyId.RIGHTMOST_POS:
        for p in range(len(books), 0, -1):
            if books[p - 1] != p:
                return books[p - 1]
    if strategy is StrategyId.RANDOM:
        if rng is None:
            raise ValueError("the random strategy needs a seeded generator")
        return candidates[int(rng.integers(len(candidates)))]
    if strategy is StrategyId.GREEDY_MIN:
        if len(books) > _k.MAX_KERNEL_N:
            return _greedy_py(books, candidates)
        return int(_k.greedy_move(np.array(books, dtype=np.int8), len(books)))
    if strategy is StrategyId.ORACLE:
        return table_for(len(books)).best_move(books)
    raise ValueError(f"unhandled strategy {strategy}")  # pragma: no cover


def next_move(strategy: StrategyId | str, s: Shelf,
              rng: np.random.Generator | None = None) -> int:
    return _next_book(StrategyId.parse(strategy) if isinstance(strategy, str) else strategy,
                      s.books, rng)


def play(s: Shelf, strategy: StrategyId | str, seed: int | None = None,
         limit: int = DEFAULT_SEARCH_LIMIT, allow_unsafe: bool = False) -> GameTrace:
    """Run the process from ``s`` under ``strategy`` until the shelf is sorted.

    The ``oracle`` strategy relies on the exhaustive search and therefore
    honours its size limit. More moves than the potential allows raises
    :class:`BoundViolation`.
    """
    if isinstance(strategy, str):
        strategy = StrategyId.parse(strategy)
    if strategy is StrategyId.ORACLE and s.n > limit and not allow_unsafe:
        raise LimitExceeded(s.n, limit, "oracle strategy")
    if strategy is StrategyId.RANDOM and seed is None:
        raise ValueError("the random strategy needs a seed")
    rng = make_rng(seed) if strategy is StrategyId.RANDOM else None

    books = s.books
    n = len(books)
    pair = potential_pair(books)
    budget = sum_ceiling(n) - sum(pair)
    steps = []
    while True:
        candidates = _misplaced(books)
        if not candidates:
            break
        if len(steps) >= budget:
            raise BoundViolation(f"{strategy.value} exceeded {budget} moves from {s}")
        book = _next_book(strategy, books, rng, candidates)
        src = books.index(book) + 1
        after = move_books(books, book)
        pair = moved_pair(books, after, pair, min(src, book), max(src, book))
        books = after
        steps.append((MoveRecord(book, src, book), Potential(*pair)))

    meta = {"strategy": strategy.value, "seed": seed}
    if strategy is StrategyId.RANDOM:
        meta["rng_name"] = RNG_NAME
    return GameTrace(s, tuple(steps), Shelf._trusted(books), meta)
