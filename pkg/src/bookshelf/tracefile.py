"""JSON trace documents: writing, reading and independent re-validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import IllegalMove, PermutationError, SchemaError
from .game import GameTrace
from .potential import Potential, check_step, potential_pair
from .shelf import Direction, apply_move, format_shelf, is_sorted, parse_shelf

SCHEMA_VERSION = 1
DIRECTIONS = tuple(d.value for d in Direction)


def trace_document(trace: GameTrace, **metadata) -> dict:
    """Serializable form of a trace.

    ``potentials`` has ``length + 1`` entries: the initial shelf's potential
    first, then the potential after every move.
    """
    meta = {"strategy": None, "seed": None, "rng_name": None}
    meta.update(trace.metadata)
    meta.update(metadata)
    meta["tool_version"] = __version__
    return {
        "schema_version": SCHEMA_VERSION,
        "n": trace.initial.n,
        "initial": format_shelf(trace.initial.books),
        "moves": [{"book": mv.book, "from": mv.from_pos, "to": mv.to_pos,
                   "direction": mv.direction.value} for mv, _ in trace.steps],
        "potentials": [p.as_dict() for p in trace.potentials()],
        "final": format_shelf(trace.final.books),
        "length": trace.length,
        "metadata": meta,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_trace(path: str | Path, trace: GameTrace, **metadata) -> dict:
    doc = trace_document(trace, **metadata)
    Path(path).write_text(dumps(doc))
    return doc


@dataclass
class Issue:
    step: int | None
    kind: str
    message: str


@dataclass
class TraceVerdict:
    issues: list[Issue] = field(default_factory=list)
    steps_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.issues

    def add(self, step: int | None, kind: str, message: str) -> None:
        self.issues.append(Issue(step, kind, message))

    def as_dict(self) -> dict:
        return {"passed": self.passed, "steps_checked": self.steps_checked,
                "issues": [vars(i) for i in self.issues]}


_REQUIRED = {"schema_version": int, "n": int, "initial": str, "moves": list,
             "potentials": list, "final": str, "length": int, "metadata": dict}


def _check_schema(doc) -> None:
    if not isinstance(doc, dict):
        raise SchemaError("trace must be a JSON object", "$")
    for key, typ in _REQUIRED.items():
        if key not in doc:
            raise SchemaError("missing field", f"$.{key}")
        if not isinstance(doc[key], typ) or isinstance(doc[key], bool):
            raise SchemaError(f"expected {typ.__name__}", f"$.{key}")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {doc['schema_version']}",
                          "$.schema_version")
    for i, mv in enumerate(doc["moves"]):
        if not isinstance(mv, dict) or not all(isinstance(mv.get(k), int) for k in ("book", "from", "to")):
            raise SchemaError("move needs integer book/from/to", f"$.moves[{i}]")
        if mv.get("direction") not in DIRECTIONS:
            raise SchemaError("direction must be 'left' or 'right'", f"$.moves[{i}].direction")
    for i, p in enumerate(doc["potentials"]):
        if not isinstance(p, dict) or not all(isinstance(p.get(k), int) for k in ("L", "R")):
            raise SchemaError("potential needs integer L and R", f"$.potentials[{i}]")


def load_trace(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    _check_schema(doc)
    return doc


def validate_document(doc: dict) -> TraceVerdict:
    """Replay a trace document and report every disagreement.

    Steps in issues are 1-based move indices; step 0 refers to the initial
    shelf and ``None`` to whole-document properties.
    """
    _check_schema(doc)
    verdict = TraceVerdict()
    try:
        cur = parse_shelf(doc["initial"])
    except PermutationError as exc:
        raise SchemaError(str(exc), "$.initial") from None
    if cur.n != doc["n"]:
        verdict.add(None, "n", f"n={doc['n']} but initial has {cur.n} books")
    pots = doc["potentials"]
    if len(pots) != len(doc["moves"]) + 1:
        verdict.add(None, "potentials", f"{len(pots)} potentials for {len(doc['moves'])} moves")
    before = Potential(*potential_pair(cur.books))
    if pots and (pots[0]["L"], pots[0]["R"]) != (before.L, before.R):
        verdict.add(0, "potential", f"recorded {pots[0]}, actual {before.as_dict()}")

    for i, mv in enumerate(doc["moves"], 1):
        try:
            cur, rec = apply_move(cur, mv["book"])
        except IllegalMove as exc:
            verdict.add(i, "illegal_move", str(exc))
            break
        verdict.steps_checked = i
        if (mv["from"], mv["to"], mv["direction"]) != (rec.from_pos, rec.to_pos, rec.direction.value):
            verdict.add(i, "move_record",
                        f"recorded {mv['from']}->{mv['to']} {mv['direction']}, actual "
                        f"{rec.from_pos}->{rec.to_pos} {rec.direction.value}")
        after = Potential(*potential_pair(cur.books))
        if i < len(pots) and (pots[i]["L"], pots[i]["R"]) != (after.L, after.R):
            verdict.add(i, "potential", f"recorded {pots[i]}, actual {after.as_dict()}")
        step = check_step(before, after, rec)
        if not step:
            verdict.add(i, "monotonicity", f"{step}")
        before = after
    else:
        if format_shelf(cur.books) != doc["final"].replace(" ", ""):
            verdict.add(None, "final", f"recorded {doc['final']}, replay gives {cur}")
        if not is_sorted(cur):
            verdict.add(None, "unsorted", f"replay ends at {cur}, which is not sorted")
    if doc["length"] != len(doc["moves"]):
        verdict.add(None, "length", f"length {doc['length']} but {len(doc['moves'])} moves")
    return verdict


def validate_trace(path: str | Path) -> TraceVerdict:
    return validate_document(load_trace(path))
