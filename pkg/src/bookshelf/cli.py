"""Command-line front door.

    bookshelf simulate --shelf 3,1,2 --strategy random --seed 7 --trace out.json
    bookshelf construct --n 5 --verify
    bookshelf search --n 8 --witness w.json --per-state table.bin
    bookshelf bounds --n-max 9 --format csv
    bookshelf inversions --n 6 --exhaustive --csv inv.csv
    bookshelf validate out.json

Exit codes: 0 success, 1 trace failed validation, 2 usage error, 3 size
limit exceeded, 4 internal invariant violation (always a bug).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .constructions import verify_worst_case, worst_initial, worst_moves
from .errors import (BookshelfError, InvariantViolation, LimitExceeded,
                     PermutationError, SchemaError)
from .game import simulate
from .inversions import inversion_table, max_swap_game, summarize
from .potential import construction_lower_bound, improved_upper_bound
from .search import DEFAULT_SEARCH_LIMIT, global_worst, worst_table
from .shelf import format_shelf, parse_shelf
from .strategies import StrategyId, play
from .tracefile import dumps, trace_document, validate_trace

log = logging.getLogger("bookshelf")

CACHE_ENV = "BOOKSHELF_CACHE_DIR"
DEFAULT_MOVE_BUDGET = 10 ** 7

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_LIMIT, EXIT_BUG = 0, 1, 2, 3, 4


@dataclass
class ExperimentConfig:
    command: str
    n: int | None = None
    n_min: int = 2
    n_max: int | None = None
    shelf: str | None = None
    strategy: str = "leftmost"
    seed: int | None = None
    output_format: str = "json"
    output: str | None = None
    trace: str | None = None
    witness: str | None = None
    per_state: str | None = None
    cache_dir: str | None = None
    limit: int = DEFAULT_SEARCH_LIMIT
    unsafe_n: bool = False
    move_budget: int = DEFAULT_MOVE_BUDGET
    verify: bool = False
    exhaustive: bool = False
    adjacent: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> ExperimentConfig:
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__}
        if fields.get("cache_dir") is None:
            fields["cache_dir"] = os.environ.get(CACHE_ENV)
        return cls(**fields)


class UsageError(BookshelfError):
    pass


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _need_n(cfg: ExperimentConfig, minimum: int = 1) -> int:
    if cfg.n is None or cfg.n < minimum:
        raise UsageError(f"--n must be given and at least {minimum}")
    return cfg.n


def cmd_simulate(cfg: ExperimentConfig) -> int:
    if not cfg.shelf:
        raise UsageError("--shelf is required")
    shelf = parse_shelf(cfg.shelf)
    strategy = StrategyId.parse(cfg.strategy)
    seed = cfg.seed
    if strategy is StrategyId.RANDOM and seed is None:
        raise UsageError("--seed is required for the random strategy")
    trace = play(shelf, strategy, seed=seed, limit=cfg.limit, allow_unsafe=cfg.unsafe_n)
    doc = trace_document(trace)
    if cfg.trace:
        Path(cfg.trace).write_text(dumps(doc))
        summary = {"n": shelf.n, "initial": doc["initial"], "length": trace.length,
                   "final": doc["final"], "trace": cfg.trace}
        sys.stdout.write(dumps(summary))
    else:
        sys.stdout.write(dumps(doc))
    return EXIT_OK


def cmd_construct(cfg: ExperimentConfig) -> int:
    n = _need_n(cfg, 2)
    length = construction_lower_bound(n)
    out = {"n": n, "initial": format_shelf(worst_initial(n).books), "length": length}
    if cfg.verify:
        wc = verify_worst_case(n, move_budget=cfg.move_budget)
        out.update({"verified": True, "length": wc.length, "expected_length": length,
                    "final_sorted": True, "book_n_moved": wc.book_n_moved,
                    "potential_monotone": wc.potential_checked})
    if length <= cfg.move_budget:
        out["moves"] = worst_moves(n)
    else:
        out["moves_omitted"] = f"{length} moves exceed the move budget {cfg.move_budget}"
    _emit(dumps(out), cfg.output)
    return EXIT_OK


def cmd_search(cfg: ExperimentConfig) -> int:
    n = _need_n(cfg)
    res = global_worst(n, limit=cfg.limit, allow_unsafe=cfg.unsafe_n, cache_dir=cfg.cache_dir)
    lower, upper = construction_lower_bound(n), improved_upper_bound(n) if n >= 2 else 0
    out = {
        "n": n, "W": res.w, "lower": lower, "upper": upper,
        "within_bounds": lower <= res.w <= upper if n >= 2 else True,
        "argmax": format_shelf(res.argmax.books),
        "argmax_count": int((res.per_state == res.w).sum()),
        "witness": list(res.witness),
    }
    if cfg.witness:
        trace = simulate(res.argmax, res.witness)
        Path(cfg.witness).write_text(dumps(trace_document(trace, strategy="oracle")))
        out["witness_file"] = cfg.witness
    if cfg.per_state:
        worst_table(n, limit=cfg.limit, allow_unsafe=cfg.unsafe_n).save(cfg.per_state)
        out["per_state_file"] = cfg.per_state
    _emit(dumps(out), cfg.output)
    return EXIT_OK


def bounds_rows(n_min: int, n_max: int, limit: int = DEFAULT_SEARCH_LIMIT,
                allow_unsafe: bool = False, cache_dir: str | None = None) -> list[list[int]]:
    rows = []
    for n in range(n_min, n_max + 1):
        w = global_worst(n, limit=limit, allow_unsafe=allow_unsafe,
                         cache_dir=cache_dir, keep_table=False).w
        rows.append([n, construction_lower_bound(n), w, improved_upper_bound(n)])
    return rows


def cmd_bounds(cfg: ExperimentConfig) -> int:
    if cfg.n_max is None or cfg.n_max < cfg.n_min or cfg.n_min < 2:
        raise UsageError("need 2 <= --n-min <= --n-max")
    if cfg.n_max > cfg.limit and not cfg.unsafe_n:
        raise LimitExceeded(cfg.n_max, cfg.limit)
    rows = bounds_rows(cfg.n_min, cfg.n_max, cfg.limit, cfg.unsafe_n, cfg.cache_dir)
    header = ["n", "lower", "W", "upper"]
    if cfg.output_format == "csv":
        text = _csv_text(header, rows)
    else:
        text = dumps([dict(zip(header, r)) for r in rows])
    _emit(text, cfg.output)
    return EXIT_OK


def cmd_inversions(cfg: ExperimentConfig) -> int:
    n = _need_n(cfg)
    game = max_swap_game(n)
    out = {"n": n, "max_swap_game_length": game.length,
           "expected": n * (n - 1) // 2, "final_sorted": list(game.final.books) == list(range(1, n + 1))}
    if cfg.exhaustive:
        rows = inversion_table(n, adjacent=cfg.adjacent, limit=cfg.limit,
                               allow_unsafe=cfg.unsafe_n)
        out.update(summarize(rows))
        out["adjacent_only"] = cfg.adjacent
        if cfg.output:
            header = ["rank", "shelf", "inversion_count", "min_sort_length",
                      "swap_longest_game", "cycle_bound"]
            Path(cfg.output).write_text(_csv_text(header, [
                [r.rank, format_shelf(r.shelf.books), r.inversion_count, r.min_sort_length,
                 r.swap_longest_game, r.cycle_bound] for r in rows]))
            out["csv"] = cfg.output
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_validate(cfg: ExperimentConfig) -> int:
    verdict = validate_trace(cfg.trace)
    sys.stdout.write(dumps(verdict.as_dict()))
    return EXIT_OK if verdict.passed else EXIT_INVALID


COMMANDS = {
    "simulate": cmd_simulate,
    "construct": cmd_construct,
    "search": cmd_search,
    "bounds": cmd_bounds,
    "inversions": cmd_inversions,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bookshelf", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def limits(p, exhaustive=True):
        if exhaustive:
            p.add_argument("--limit", type=int, default=DEFAULT_SEARCH_LIMIT,
                           help="largest n for exhaustive work (default %(default)s)")
            p.add_argument("--unsafe-n", action="store_true",
                           help="allow n above --limit despite the memory cost")
        p.add_argument("--out", dest="output", help="write the result here instead of stdout")

    p = sub.add_parser("simulate", help="play one game under a strategy")
    p.add_argument("--shelf", required=True, help='comma-separated shelf, e.g. "3,1,2"')
    p.add_argument("--strategy", default="leftmost",
                   choices=[s.value for s in StrategyId])
    p.add_argument("--seed", type=int)
    p.add_argument("--trace", help="write the JSON trace to this path")
    p.add_argument("--limit", type=int, default=DEFAULT_SEARCH_LIMIT)
    p.add_argument("--unsafe-n", action="store_true")

    p = sub.add_parser("construct", help="the 2^(n-1)-1 move construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="replay and check every invariant")
    p.add_argument("--move-budget", type=int, default=DEFAULT_MOVE_BUDGET)
    limits(p, exhaustive=False)

    p = sub.add_parser("search", help="exact W(n) by exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witness", help="write the witness game as a JSON trace")
    p.add_argument("--per-state", help="write the per-state table (binary)")
    p.add_argument("--cache-dir", help=f"table cache directory (default ${CACHE_ENV})")
    limits(p)

    p = sub.add_parser("bounds", help="table of lower bound, W(n), upper bound")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--format", dest="output_format", choices=["csv", "json"], default="csv")
    p.add_argument("--cache-dir", help=f"table cache directory (default ${CACHE_ENV})")
    limits(p)

    p = sub.add_parser("inversions", help="inverted-pair swap process")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="tabulate every shelf")
    p.add_argument("--adjacent", action="store_true", help="only swap neighbours")
    p.add_argument("--csv", dest="output", help="per-shelf CSV output (with --exhaustive)")
    p.add_argument("--limit", type=int, default=8)
    p.add_argument("--unsafe-n", action="store_true")

    p = sub.add_parser("validate", help="re-check a JSON trace")
    p.add_argument("trace")
    return parser


def _fail(code: int, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                 "exit_code": code}) + "\n")
    return code


def run(cfg: ExperimentConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except LimitExceeded as exc:
        return _fail(EXIT_LIMIT, exc)
    except InvariantViolation as exc:
        return _fail(EXIT_BUG, exc)
    except (UsageError, PermutationError, SchemaError, ValueError) as exc:
        return _fail(EXIT_USAGE, exc)
    except BookshelfError as exc:
        return _fail(EXIT_USAGE, exc)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return run(ExperimentConfig.from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
