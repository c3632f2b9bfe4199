"""Simulation and exhaustive analysis of the bookshelf sorting process."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BookshelfError,
    BoundViolation,
    ConstructionBug,
    IllegalMove,
    IllegalSwap,
    LimitExceeded,
    NoMove,
    PermutationError,
    RangeError,
    SchemaError,
    TooSmall,
)
from .game import GameTrace, simulate  # noqa: E402
from .shelf import (  # noqa: E402
    Direction,
    MoveRecord,
    Shelf,
    apply_move,
    is_sorted,
    misplaced,
    parse_shelf,
)
