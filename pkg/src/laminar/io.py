"""Text formats: stream files, window registries, query text and answers.

Stream file::

    # comment
    timeline 0 13
    2 tr(a,p1), bus(c,p1)
    8 tr(d,p2)

Query text, loosest to tightest binding: ``->`` (right associative),
``or``, ``and``, then the prefix operators ``not``, ``sometime``,
``always``, ``@ <time>`` and ``win <i>``. A query ends with its time in
brackets, e.g. ``win 1 sometime (tr(X,P) and bus(Y,P)) [U]``.
"""

from __future__ import annotations

import json
import re
from typing import Mapping

from .engine import Answer
from .errors import (
    EntryOutsideTimeline,
    InvalidSpec,
    MissingTimeline,
    MixedVariableNamespace,
    ParseError,
    UnknownKind,
)
from .logic import (
    BINARY,
    And,
    Always,
    At,
    Atom,
    Const,
    Formula,
    Implies,
    Not,
    Or,
    Query,
    Sometime,
    TimeVar,
    Var,
    Win,
    free_variables,
)
from .stream import GroundAtom, Stream, Timeline
from .windows import (
    ExtendedWindow,
    IndexFunction,
    PartitionWindowSpec,
    StreamChoice,
    TimeWindowSpec,
    TupleMode,
    TupleWindowSpec,
    WindowRegistry,
)

KEYWORDS = frozenset({"not", "and", "or", "sometime", "always", "win"})

# ---------------------------------------------------------------- streams

_GROUND_ATOM = re.compile(r"\s*([a-z][A-Za-z0-9_]*)\s*(?:\(\s*([^()]*?)\s*\))?\s*")
_CONST = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def parse_ground_atoms(text: str, line: int | None = None) -> list[GroundAtom]:
    atoms = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _GROUND_ATOM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"expected a ground atom at {text[pos:]!r}", line)
        pred, args = m.group(1), m.group(2)
        if args is None:
            arg_list = ()
        else:
            arg_list = tuple(a.strip() for a in args.split(","))
            for a in arg_list:
                if not _CONST.match(a):
                    raise ParseError(f"argument {a!r} of {pred} is not a constant", line)
        atoms.append(GroundAtom(pred, arg_list))
        pos = m.end()
        if pos < len(text):
            if text[pos] != ",":
                raise ParseError(f"expected ',' between atoms at {text[pos:]!r}", line)
            pos += 1
            if pos >= len(text.rstrip()):
                raise ParseError("trailing ','", line)
    return atoms


def parse_stream_file(text: str) -> Stream:
    timeline = None
    events: dict[int, set] = {}
    first_line: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "timeline":
            if timeline is not None:
                raise ParseError("duplicate timeline declaration", lineno)
            parts = rest.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError("expected 'timeline <t_min> <t_max>'", lineno)
            lo, hi = int(parts[0]), int(parts[1])
            timeline = Timeline(lo, hi)
            continue
        if not head.isdigit():
            raise ParseError(f"expected a time point or 'timeline', got {head!r}", lineno)
        t = int(head)
        events.setdefault(t, set()).update(parse_ground_atoms(rest, lineno))
        first_line.setdefault(t, lineno)
    if timeline is None:
        raise MissingTimeline("stream file has no 'timeline <t_min> <t_max>' line")
    for t in events:
        if t not in timeline:
            raise EntryOutsideTimeline(t, timeline)
    return Stream(timeline, events)


def format_stream(s: Stream) -> str:
    lines = [f"timeline {s.t_min} {s.t_max}"]
    for t, atoms in s.items():
        lines.append(f"{t} " + ", ".join(str(a) for a in sorted(atoms)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- queries

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<arrow>->)
      | (?P<punct>[()\[\],@])
      | (?P<num>\d+)
      | (?P<lower>[a-z][A-Za-z0-9_]*)
      | (?P<upper>[A-Z][A-Za-z0-9_]*)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        kind = m.lastgroup
        value = m.group(kind)
        col = m.start(kind) + 1
        if kind in ("arrow", "punct"):
            kind = value
        elif kind == "lower" and value in KEYWORDS:
            kind = value
        tokens.append((kind, value, col))
        pos = m.end()
    tokens.append(("eof", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            shown = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind!r} but found {shown}", 1, tok[2])
        self.i += 1
        return tok

    def formula(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == "or":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek() == "and":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        kind = self.peek()
        if kind == "not":
            self.take()
            return Not(self.unary())
        if kind == "sometime":
            self.take()
            return Sometime(self.unary())
        if kind == "always":
            self.take()
            return Always(self.unary())
        if kind == "@":
            self.take()
            return At(self.time_term(), self.unary())
        if kind == "win":
            self.take()
            _, value, col = self.take("num")
            if int(value) < 1:
                raise ParseError("window indices start at 1", 1, col)
            return Win(int(value), self.unary())
        return self.primary()

    def primary(self):
        if self.peek() == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        _, pred, _ = self.take("lower")
        args = []
        if self.peek() == "(":
            self.take()
            args.append(self.term())
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
        return Atom(pred, tuple(args))

    def term(self):
        kind, value, col = self.take()
        if kind == "lower":
            return Const(value)
        if kind == "upper":
            return Var(value)
        raise ParseError(f"expected a constant or variable but found {value!r}", 1, col)

    def time_term(self):
        kind, value, col = self.take()
        if kind == "num":
            return int(value)
        if kind == "upper":
            return TimeVar(value)
        raise ParseError(f"expected a time point or time variable but found {value!r}", 1, col)


def _check_namespaces(f):
    term_vars, time_vars = free_variables(f)
    clash = term_vars & time_vars
    if clash:
        raise MixedVariableNamespace(sorted(clash)[0])


def parse_formula_text(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.take("eof")
    _check_namespaces(f)
    return f


def parse_query_text(text: str, default_at=None) -> Query:
    """Parse ``<formula> [<time>]``.

    If the bracket is missing, ``default_at`` is used as the query time;
    without a default that is a syntax error.
    """
    p = _Parser(text)
    f = p.formula()
    if p.peek() == "[":
        p.take()
        at = p.time_term()
        p.take("]")
    elif default_at is not None:
        at = default_at
    else:
        tok = p.tokens[p.i]
        raise ParseError("expected '[<time>]' after the formula", 1, tok[2])
    p.take("eof")
    return Query(f, at)


_PREFIX = {Not: "not", Sometime: "sometime", Always: "always"}
_INFIX = {And: "and", Or: "or", Implies: "->"}


def format_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return str(f)
    if type(f) in _PREFIX:
        return f"{_PREFIX[type(f)]} {format_formula(f.body)}"
    if isinstance(f, At):
        return f"@ {f.time} {format_formula(f.body)}"
    if isinstance(f, Win):
        return f"win {f.index} {format_formula(f.body)}"
    if isinstance(f, BINARY):
        return f"({format_formula(f.left)} {_INFIX[type(f)]} {format_formula(f.right)})"
    raise TypeError(f"not a formula: {f!r}")


def format_query(q: Query) -> str:
    return f"{format_formula(q.formula)} [{q.at}]"


# ---------------------------------------------------------------- registries

_COMMON = {"kind", "input"}
_FIELDS = {
    "time": _COMMON | {"past", "future", "step"},
    "tuple": _COMMON | {"past", "future", "mode"},
    "partition": _COMMON | {"index", "default", "counts", "mode"},
}


def _int_field(entry, key, where, default=0):
    value = entry.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidSpec(f"{where}: {key!r} must be a non-negative integer, got {value!r}")
    return value


def _mode(entry, where, default):
    value = entry.get("mode", default)
    try:
        return TupleMode(value)
    except ValueError:
        raise InvalidSpec(f"{where}: unknown mode {value!r}") from None


def _partition(entry, where, default_mode):
    index = entry.get("index", {})
    if not isinstance(index, dict):
        raise InvalidSpec(f"{where}: 'index' must map predicate names to indices")
    by_pred = {}
    for pred, i in index.items():
        by_pred[pred] = _int_field(index, pred, where)
    default = _int_field(entry, "default", where)
    counts_raw = entry.get("counts")
    if not isinstance(counts_raw, dict):
        raise InvalidSpec(f"{where}: 'counts' must map indices to [past, future] pairs")
    counts = {}
    for key, pair in counts_raw.items():
        if not key.isdigit():
            raise InvalidSpec(f"{where}: count key {key!r} is not an index")
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InvalidSpec(f"{where}: counts for index {key} must be a [past, future] pair")
        counts[int(key)] = (_int_field({"c": pair[0]}, "c", where), _int_field({"c": pair[1]}, "c", where))
    return PartitionWindowSpec(IndexFunction(by_pred, default), counts, _mode(entry, where, default_mode))


def parse_registry(text: str, default_mode: TupleMode | str = TupleMode.EXACT) -> WindowRegistry:
    """Parse a JSON window registry.

    ``default_mode`` applies to tuple and partition windows that do not name
    a mode themselves.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("a window registry must be a JSON object")
    entries = {}
    for key, entry in doc.items():
        where = f"window {key}"
        if not key.isdigit() or int(key) < 1:
            raise InvalidSpec(f"{where}: keys must be positive window indices")
        if not isinstance(entry, dict):
            raise InvalidSpec(f"{where}: entry must be an object")
        kind = entry.get("kind")
        if kind not in _FIELDS:
            raise UnknownKind(kind)
        extra = set(entry) - _FIELDS[kind]
        if extra:
            raise InvalidSpec(f"{where}: unexpected field(s) {sorted(extra)} for kind {kind!r}")
        try:
            choice = StreamChoice(entry.get("input", "current"))
        except ValueError:
            raise InvalidSpec(f"{where}: input must be 'urstream' or 'current'") from None
        if kind == "time":
            spec = TimeWindowSpec(
                _int_field(entry, "past", where),
                _int_field(entry, "future", where),
                _int_field(entry, "step", where, 1),
            )
        elif kind == "tuple":
            spec = TupleWindowSpec(
                _int_field(entry, "past", where),
                _int_field(entry, "future", where),
                _mode(entry, where, default_mode),
            )
        else:
            spec = _partition(entry, where, default_mode)
        entries[int(key)] = ExtendedWindow(spec, choice)
    return WindowRegistry(entries)


# ---------------------------------------------------------------- answers


def answer_to_dict(a: Answer) -> dict:
    if a.ground:
        return {"ground": True, "answer": "yes" if a.holds else "no"}
    return {
        "ground": False,
        "answers": [{"vars": x.sigma, "times": x.tau} for x in a.assignments],
    }


def serialize_answer(a: Answer, extra: Mapping | None = None) -> str:
    doc = answer_to_dict(a)
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
