"""Shelf state and the librarian's move.

A shelf is a permutation of books ``1..n`` on positions ``1..n``. Book ``k``
is *home* when it stands at position ``k``. One move takes a misplaced book
out and reinserts it at its home position; the books in between slide one
place toward the vacated slot.

Everything here is 1-indexed at the API level. Internally a shelf is a plain
tuple, so ``books[p - 1]`` is the book at position ``p``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import IllegalMove, PermutationError


class Direction(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Shelf:
    books: tuple[int, ...]

    def __post_init__(self) -> None:
        books = tuple(self.books)
        object.__setattr__(self, "books", books)
        if sorted(books) != list(range(1, len(books) + 1)):
            raise PermutationError(f"not a permutation of 1..{len(books)}: {list(books)}")

    @classmethod
    def identity(cls, n: int) -> Shelf:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def _trusted(cls, books: tuple[int, ...]) -> Shelf:
        # skips validation; callers guarantee a permutation
        obj = object.__new__(cls)
        object.__setattr__(obj, "books", books)
        return obj

    @property
    def n(self) -> int:
        return len(self.books)

    def __len__(self) -> int:
        return len(self.books)

    def __iter__(self) -> Iterator[int]:
        return iter(self.books)

    def __getitem__(self, position: int) -> int:
        """Book standing at 1-based ``position``."""
        if not 1 <= position <= len(self.books):
            raise IndexError(position)
        return self.books[position - 1]

    def position(self, book: int) -> int:
        return self.books.index(book) + 1

    def __str__(self) -> str:
        return format_shelf(self.books)


@dataclass(frozen=True)
class MoveRecord:
    book: int
    from_pos: int
    to_pos: int

    @property
    def direction(self) -> Direction:
        return Direction.LEFT if self.from_pos > self.to_pos else Direction.RIGHT


def format_shelf(books: Iterable[int]) -> str:
    return ",".join(str(b) for b in books)


def parse_shelf(text: str) -> Shelf:
    """Parse ``"3,1,2"`` into a shelf. Whitespace around entries is ignored."""
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        raise PermutationError("empty shelf")
    try:
        books = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise PermutationError(f"bad shelf text {text!r}: {exc}") from None
    return Shelf(books)


def is_sorted(s: Shelf) -> bool:
    return all(b == p for p, b in enumerate(s.books, 1))


def misplaced(s: Shelf) -> list[int]:
    return sorted(b for p, b in enumerate(s.books, 1) if b != p)


def move_books(books: tuple[int, ...], book: int) -> tuple[int, ...]:
    """Raw move on a tuple; no legality checks beyond what indexing enforces."""
    p = books.index(book)
    k = book - 1
    if p > k:
        return books[:k] + (book,) + books[k:p] + books[p + 1:]
    return books[:p] + books[p + 1:k + 1] + (book,) + books[k + 1:]


def apply_move(s: Shelf, book: int) -> tuple[Shelf, MoveRecord]:
    n = len(s.books)
    if not 1 <= book <= n:
        raise IllegalMove(f"book {book} does not exist on a shelf of {n}", book=book)
    p = s.books.index(book) + 1
    if p == book:
        raise IllegalMove(f"book {book} is already home", book=book)
    return Shelf._trusted(move_books(s.books, book)), MoveRecord(book, p, book)
