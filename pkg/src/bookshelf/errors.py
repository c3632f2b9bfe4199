"""Exception hierarchy shared by the whole package."""


class BookshelfError(Exception):
    pass


class PermutationError(BookshelfError, ValueError):
    """Input is not a permutation of 1..n."""


class IllegalMove(BookshelfError, ValueError):
    """A book that is already home (or does not exist) was asked to move.

    ``step`` is the 1-based index inside a replayed sequence, when known.
    """

    def __init__(self, message: str, step: int | None = None, book: int | None = None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step
        self.book = book


class IllegalSwap(BookshelfError, ValueError):
    pass


class TooSmall(BookshelfError, ValueError):
    pass


class RangeError(BookshelfError, IndexError):
    pass


class LimitExceeded(BookshelfError):
    """An exhaustive operation was asked to run above its configured size limit."""

    def __init__(self, n: int, limit: int, what: str = "exhaustive search"):
        super().__init__(
            f"{what} refused for n={n}: limit is {limit} "
            f"(pass --unsafe-n / allow_unsafe=True to override)"
        )
        self.n = n
        self.limit = limit


class NoMove(BookshelfError):
    """A strategy was asked for a move on a sorted shelf."""


class InvariantViolation(BookshelfError):
    """Base for errors that can only mean a bug in this package."""


class BoundViolation(InvariantViolation):
    pass


class ConstructionBug(InvariantViolation):
    pass


class SchemaError(BookshelfError, ValueError):
    def __init__(self, message: str, location: str | None = None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
