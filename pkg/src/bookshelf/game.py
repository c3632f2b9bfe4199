"""Replaying move sequences into traces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import IllegalMove
from .potential import Potential, potential_pair
from .shelf import MoveRecord, Shelf, apply_move, is_sorted


@dataclass(frozen=True)
class GameTrace:
    initial: Shelf
    steps: tuple[tuple[MoveRecord, Potential], ...]
    final: Shelf
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def moves(self) -> list[int]:
        return [mv.book for mv, _ in self.steps]

    @property
    def complete(self) -> bool:
        return is_sorted(self.final)

    def potentials(self) -> list[Potential]:
        """Potential of the initial shelf followed by the one after every step."""
        L, R = potential_pair(self.initial.books)
        return [Potential(L, R)] + [pot for _, pot in self.steps]


def simulate(s: Shelf, moves: Iterable[int]) -> GameTrace:
    """Replay ``moves`` from ``s``. An illegal move raises with its 1-based step."""
    steps = []
    cur = s
    for i, book in enumerate(moves, 1):
        try:
            cur, rec = apply_move(cur, book)
        except IllegalMove as exc:
            raise IllegalMove(str(exc), step=i, book=book) from None
        steps.append((rec, Potential(*potential_pair(cur.books))))
    return GameTrace(s, tuple(steps), cur)
