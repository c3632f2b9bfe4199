"""The inductive long-game family.

Start from ``[n, 1, 2, ..., n-1]``. For two books one move suffices. For
``n + 1`` books, play the ``n``-book game on the right-hand ``n`` positions
with every id shifted up by one (book 1 then plays the part of the largest
book and ends up last), move book 1 home, and play the shifted ``n``-book game
again. Book ``n`` is never touched and the length is ``2**(n-1) - 1``.

Unrolled, the move at step ``j`` is ``n - 1 - v2(j)`` where ``v2`` is the
2-adic valuation, which lets long replays stream without materializing the
move list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ConstructionBug, IllegalMove, TooSmall
from .potential import Potential, check_step, potential_pair
from .shelf import Shelf, apply_move, is_sorted


@dataclass(frozen=True)
class WorstCase:
    n: int
    initial: Shelf
    length: int
    book_n_moved: bool = False
    potential_checked: bool = False

    @property
    def moves(self) -> list[int]:
        return worst_moves(self.n)


def _require(n: int) -> None:
    if n < 2:
        raise TooSmall(f"the construction needs n >= 2, got {n}")


def worst_initial(n: int) -> Shelf:
    _require(n)
    return Shelf((n,) + tuple(range(1, n)))


def worst_moves(n: int) -> list[int]:
    _require(n)
    moves = [1]
    for _ in range(2, n):
        shifted = [b + 1 for b in moves]
        moves = shifted + [1] + shifted
    return moves


def iter_worst_moves(n: int) -> Iterator[int]:
    """Same sequence as :func:`worst_moves`, generated lazily."""
    _require(n)
    for j in range(1, 1 << (n - 1)):
        yield n - 1 - ((j & -j).bit_length() - 1)


def verify_worst_case(n: int, check_potential: bool = True,
                      move_budget: int | None = None) -> WorstCase:
    """Stream-replay the construction and check every claimed property.

    Raises ``ConstructionBug`` on any violation, and ``ValueError`` when the
    replay would exceed ``move_budget`` moves.
    """
    _require(n)
    expected = (1 << (n - 1)) - 1
    if move_budget is not None and expected > move_budget:
        raise ValueError(f"construction for n={n} has {expected} moves, "
                         f"over the budget of {move_budget}")
    initial = worst_initial(n)
    cur = initial
    before = Potential(*potential_pair(cur.books))
    count = 0
    for book in iter_worst_moves(n):
        count += 1
        if book == n:
            raise ConstructionBug(f"book {n} moved at step {count}")
        try:
            cur, rec = apply_move(cur, book)
        except IllegalMove as exc:
            raise ConstructionBug(f"illegal move at step {count}: {exc}") from exc
        if check_potential:
            after = Potential(*potential_pair(cur.books))
            if not check_step(before, after, rec):
                raise ConstructionBug(f"potential not monotone at step {count}")
            before = after
    if count != expected:
        raise ConstructionBug(f"replayed {count} moves, expected {expected}")
    if not is_sorted(cur):
        raise ConstructionBug(f"final shelf {cur} is not sorted")
    return WorstCase(n, initial, count, book_n_moved=False,
                     potential_checked=check_potential)
