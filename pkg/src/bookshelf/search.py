"""Exact longest games by memoized longest path over the move graph.

Every move strictly raises ``L + R``, so the graph on the ``n!`` shelves is
acyclic and the longest game from a shelf is well defined.

:class:`WorstTable` stores the longest remaining game for every shelf in a
dense array indexed by Lehmer rank, filled by a compiled iterative DFS. The
DFS marks states on its stack, so a cycle (which a broken move or potential
implementation could produce) is reported as :class:`InvariantViolation`
instead of being silently memoized.

Witnesses break ties by the smallest book id at every step, which gives the
lexicographically smallest optimal move sequence.
"""

from __future__ import annotations

import logging
import math
import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from . import _kernels as _k
from .errors import InvariantViolation, LimitExceeded, NoMove, RangeError
from .shelf import Shelf, format_shelf, move_books

log = logging.getLogger(__name__)

DEFAULT_SEARCH_LIMIT = 9
TABLE_FORMAT_VERSION = 1
_TABLE_MAGIC = b"BSWT"


# -- Lehmer ranking ---------------------------------------------------------

def rank_perm(s: Shelf) -> int:
    """Lehmer rank; digit ``i`` counts smaller ids to the right of position ``i``.

    This coincides with the index in lexicographic order, so the identity is 0
    and the reversed shelf is ``n! - 1``.
    """
    books = s.books
    n = len(books)
    r = 0
    for i, b in enumerate(books):
        smaller = sum(1 for c in books[i + 1:] if c < b)
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank_perm(n: int, r: int) -> Shelf:
    if n < 0 or not 0 <= r < math.factorial(n):
        raise RangeError(f"rank {r} out of range for n={n}")
    pool = list(range(1, n + 1))
    books = []
    for i in range(n - 1, -1, -1):
        d, r = divmod(r, math.factorial(i))
        books.append(pool.pop(d))
    return Shelf._trusted(tuple(books))


def _check_limit(n: int, limit: int, allow_unsafe: bool) -> None:
    if n > limit and not allow_unsafe:
        raise LimitExceeded(n, limit)


def _successors(books: tuple[int, ...]):
    """(book, next_books) for every legal move, ascending by book."""
    for b in sorted(b for p, b in enumerate(books, 1) if b != p):
        yield b, move_books(books, b)


# -- dense table ------------------------------------------------------------

def _as_books(s: Shelf | tuple[int, ...]) -> tuple[int, ...]:
    return s.books if isinstance(s, Shelf) else tuple(s)


class WorstTable:
    """Longest remaining game per shelf of size ``n``, indexed by Lehmer rank.

    Entries are filled lazily: :meth:`value` evaluates a shelf together with
    everything reachable from it, :meth:`fill` evaluates all ``n!`` shelves.
    Entries are write-once and depend only on the shelf, so the table is the
    same whatever order the states were evaluated in.
    """

    def __init__(self, n: int, values: np.ndarray | None = None):
        if not 1 <= n <= _k.MAX_KERNEL_N:
            raise LimitExceeded(n, _k.MAX_KERNEL_N, "dense table")
        self.n = n
        if values is None:
            values = np.full(math.factorial(n), _k.UNKNOWN, dtype=np.int16)
        self.values = values
        # a game never outlasts the potential range
        self._max_depth = (1 << n) + 1

    @property
    def complete(self) -> bool:
        return bool((self.values >= 0).all())

    def _arr(self, books: tuple[int, ...]) -> np.ndarray:
        if len(books) != self.n:
            raise ValueError(f"shelf of size {len(books)} given to table for n={self.n}")
        return np.array(books, dtype=np.int8)

    def value(self, s: Shelf | tuple[int, ...]) -> int:
        v = _k.fill_from(self._arr(_as_books(s)), self.n, self.values,
                         _k.FACT, _k.POPCOUNT, self._max_depth)
        if v == _k.CYCLE:
            raise InvariantViolation(f"move graph has a cycle reachable from {s}")
        return int(v)

    def fill(self) -> WorstTable:
        if _k.fill_all(self.n, self.values, _k.FACT, _k.POPCOUNT, self._max_depth) == _k.CYCLE:
            raise InvariantViolation(f"move graph for n={self.n} has a cycle")
        return self

    def best_move(self, s: Shelf | tuple[int, ...]) -> int:
        """Smallest book whose move keeps the game as long as possible."""
        books = _as_books(s)
        arr = self._arr(books)
        v = _k.fill_from(arr, self.n, self.values, _k.FACT, _k.POPCOUNT, self._max_depth)
        if v == _k.CYCLE:
            raise InvariantViolation(f"move graph has a cycle reachable from {s}")
        if v == 0:
            raise NoMove(f"{format_shelf(books)} is sorted")
        b = _k.best_move(arr, self.n, self.values, _k.FACT, _k.POPCOUNT)
        if b < 0:  # pragma: no cover - only on table corruption
            raise InvariantViolation(f"no optimal move from {books}")
        return int(b)

    def witness(self, s: Shelf | tuple[int, ...]) -> list[int]:
        books = _as_books(s)
        moves = []
        while self.value(books):
            b = self.best_move(books)
            moves.append(b)
            books = move_books(books, b)
        return moves

    # -- disk cache --

    def save(self, path: str | os.PathLike) -> None:
        version = __version__.encode()
        header = _TABLE_MAGIC + struct.pack("<HHH", TABLE_FORMAT_VERSION, self.n, len(version))
        with open(path, "wb") as fh:
            fh.write(header + version)
            fh.write(self.values.astype("<i2").tobytes())

    @classmethod
    def load(cls, path: str | os.PathLike, n: int) -> WorstTable | None:
        """Table from ``path`` if it matches ``n`` and this code version, else None."""
        try:
            data = Path(path).read_bytes()
        except OSError:
            return None
        head = len(_TABLE_MAGIC) + 6
        if len(data) < head or data[:4] != _TABLE_MAGIC:
            return None
        fmt, n_file, vlen = struct.unpack("<HHH", data[4:head])
        version = data[head:head + vlen].decode(errors="replace")
        body = data[head + vlen:]
        if (fmt, n_file, version) != (TABLE_FORMAT_VERSION, n, __version__):
            return None
        if len(body) != 2 * math.factorial(n):
            return None
        values = np.frombuffer(body, dtype="<i2").astype(np.int16)
        if (values < 0).any():
            return None
        return cls(n, values)


_tables: dict[int, WorstTable] = {}


def table_for(n: int) -> WorstTable:
    """Process-wide shared table for ``n`` (no limit check here)."""
    if n not in _tables:
        _tables[n] = WorstTable(n)
    return _tables[n]


def clear_tables() -> None:
    _tables.clear()


def cache_path(cache_dir: str | os.PathLike, n: int) -> Path:
    return Path(cache_dir) / f"wtable-n{n}-v{TABLE_FORMAT_VERSION}.bin"


def _cache_current(path: Path, n: int) -> bool:
    try:
        with open(path, "rb") as fh:
            head = fh.read(len(_TABLE_MAGIC) + 6)
            fmt, n_file, vlen = struct.unpack("<HHH", head[4:])
            version = fh.read(vlen).decode(errors="replace")
    except (OSError, struct.error):
        return False
    return (head[:4] == _TABLE_MAGIC and (fmt, n_file, version) == (TABLE_FORMAT_VERSION, n, __version__)
            and path.stat().st_size == len(head) + vlen + 2 * math.factorial(n))


def worst_table(n: int, cache_dir: str | os.PathLike | None = None,
                limit: int = DEFAULT_SEARCH_LIMIT, allow_unsafe: bool = False) -> WorstTable:
    """Completely filled table, reusing a current cached copy under ``cache_dir``.

    A cache file written by another code version is rebuilt, never trusted.
    """
    _check_limit(n, limit, allow_unsafe)
    table = table_for(n)
    path = cache_path(cache_dir, n) if cache_dir is not None else None
    if not table.complete and path is not None:
        cached = WorstTable.load(path, n)
        if cached is not None:
            log.info("loaded %s", path)
            _tables[n] = table = cached
    if not table.complete:
        table.fill()
    if path is not None and not _cache_current(path, n):
        path.parent.mkdir(parents=True, exist_ok=True)
        table.save(path)
        log.info("wrote %s", path)
    return table


def longest_game(s: Shelf, limit: int = DEFAULT_SEARCH_LIMIT,
                 allow_unsafe: bool = False) -> tuple[int, list[int]]:
    """Maximum number of moves from ``s`` over all choices, with a witness."""
    _check_limit(s.n, limit, allow_unsafe)
    if s.n <= 1:
        return 0, []
    table = table_for(s.n)
    return table.value(s), table.witness(s)


# -- global worst case -------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    n: int
    w: int
    argmax: Shelf
    witness: tuple[int, ...]
    per_state: np.ndarray | None = None

    def argmax_all(self) -> list[Shelf]:
        """Every shelf attaining ``w`` (needs ``per_state``)."""
        if self.per_state is None:
            raise ValueError("per-state table was not kept")
        return [unrank_perm(self.n, int(r)) for r in np.flatnonzero(self.per_state == self.w)]


def global_worst(n: int, limit: int = DEFAULT_SEARCH_LIMIT, allow_unsafe: bool = False,
                 cache_dir: str | os.PathLike | None = None,
                 keep_table: bool = True) -> SearchResult:
    """Exact W(n): the longest game over every starting shelf and every choice."""
    if n < 1:
        raise ValueError("n must be at least 1")
    table = worst_table(n, cache_dir=cache_dir, limit=limit, allow_unsafe=allow_unsafe)
    r = int(np.argmax(table.values))  # first maximum = smallest rank
    w = int(table.values[r])
    argmax = unrank_perm(n, r)
    witness = table.witness(argmax.books)
    return SearchResult(n, w, argmax, tuple(witness),
                        table.values if keep_table else None)
