"""Window functions: time-based, tuple-based and partition-based.

A window function maps a stream and a time point of its timeline to a
substream. Each spec class below is a declarative description with an
``apply(stream, t)`` method; the module-level functions do the work.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Union

from .errors import InvalidSpec, TimeOutsideTimeline, UnregisteredWindow
from .stream import GroundAtom, Stream, Timeline, cardinality, count_between, restrict


class TupleMode(str, enum.Enum):
    EXACT = "exact-ordered"
    AT_LEAST = "at-least"


class StreamChoice(str, enum.Enum):
    URSTREAM = "urstream"
    CURRENT = "current"

    def pick(self, urstream: Stream, current: Stream) -> Stream:
        return urstream if self is StreamChoice.URSTREAM else current


def _nat(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidSpec(f"{name} must be a non-negative integer, got {value!r}")
    return value


def _require_in(s: Stream, t: int, what: str):
    if t not in s.timeline:
        raise TimeOutsideTimeline(t, s.timeline, what)


@dataclass(frozen=True)
class TimeWindowSpec:
    """Range ``past``/``future`` around the pivot ``floor(t/step)*step``.

    ``step == past + future`` gives tumbling windows; ``past = future = 0``
    with ``step = 1`` is the window holding only the query time.
    """

    past: int = 0
    future: int = 0
    step: int = 1

    def __post_init__(self):
        _nat(self.past, "past")
        _nat(self.future, "future")
        _nat(self.step, "step")
        if self.step < 1:
            raise InvalidSpec("step must be at least 1")
        if self.step > self.past + self.future and not (self.past == self.future == 0 and self.step == 1):
            raise InvalidSpec(
                f"step {self.step} exceeds range past+future = {self.past + self.future}"
            )

    def apply(self, s: Stream, t: int) -> Stream:
        return time_window(self, s, t)


@dataclass(frozen=True)
class TupleWindowSpec:
    past: int = 0
    future: int = 0
    mode: TupleMode = TupleMode.EXACT

    def __post_init__(self):
        _nat(self.past, "past")
        _nat(self.future, "future")
        object.__setattr__(self, "mode", TupleMode(self.mode))

    def apply(self, s: Stream, t: int) -> Stream:
        return tuple_window(self, s, t)


@dataclass(frozen=True)
class IndexFunction:
    """Maps an atom to an index by its predicate name, falling back to ``default``."""

    by_predicate: tuple[tuple[str, int], ...] = ()
    default: int = 0

    def __init__(self, by_predicate: Mapping[str, int] | None = None, default: int = 0):
        items = tuple(sorted(dict(by_predicate or {}).items()))
        for _, i in items:
            _nat(i, "index")
        object.__setattr__(self, "by_predicate", items)
        object.__setattr__(self, "default", _nat(default, "default index"))

    def __call__(self, a: GroundAtom) -> int:
        return dict(self.by_predicate).get(a.predicate, self.default)

    def indices(self) -> set[int]:
        return {i for _, i in self.by_predicate} | {self.default}


@dataclass(frozen=True)
class PartitionWindowSpec:
    index_by: IndexFunction
    counts: tuple[tuple[int, tuple[int, int]], ...]
    mode: TupleMode = TupleMode.EXACT

    def __init__(self, index_by: IndexFunction, counts: Mapping[int, tuple[int, int]], mode=TupleMode.EXACT):
        normalized = {}
        for i, pair in dict(counts).items():
            past, future = pair
            normalized[_nat(i, "index")] = (_nat(past, "past count"), _nat(future, "future count"))
        missing = index_by.indices() - set(normalized)
        if missing:
            raise InvalidSpec(f"no tuple counts given for index {sorted(missing)}")
        object.__setattr__(self, "index_by", index_by)
        object.__setattr__(self, "counts", tuple(sorted(normalized.items())))
        object.__setattr__(self, "mode", TupleMode(mode))

    def index_set(self) -> list[int]:
        return [i for i, _ in self.counts]

    def apply(self, s: Stream, t: int) -> Stream:
        return partition_window(self, s, t)


WindowSpec = Union[TimeWindowSpec, TupleWindowSpec, PartitionWindowSpec]


def time_window(spec: TimeWindowSpec, s: Stream, t: int) -> Stream:
    _require_in(s, t, "time window")
    pivot = (t // spec.step) * spec.step
    lo = max(s.t_min, pivot - spec.past)
    hi = min(pivot + spec.future, s.t_max)
    return restrict(s, Timeline(lo, hi))


def tuple_time_bounds(s: Stream, t: int, past: int, future: int) -> tuple[int, int]:
    _require_in(s, t, "tuple time bounds")
    # latest start point whose suffix up to t still holds `past` atoms
    lo = s.t_min
    seen = 0
    for t2 in range(t, s.t_min - 1, -1):
        seen += len(s(t2))
        if seen >= past:
            lo = t2
            break
    if future == 0:
        return lo, t
    hi = s.t_max
    seen = 0
    for t2 in range(t + 1, s.t_max + 1):
        seen += len(s(t2))
        if seen >= future:
            hi = t2
            break
    return lo, hi


def _smallest(atoms, k):
    return frozenset(sorted(atoms)[:k])


def tuple_window(spec: TupleWindowSpec, s: Stream, t: int) -> Stream:
    lo, hi = tuple_time_bounds(s, t, spec.past, spec.future)
    window = restrict(s, Timeline(lo, hi))
    if spec.mode is TupleMode.AT_LEAST:
        return window
    interp = dict(window.items())
    past_count = count_between(s, lo, t)
    if past_count > spec.past:
        keep = spec.past - count_between(s, lo + 1, t)
        interp[lo] = _smallest(s(lo), keep)
    # when hi == t the future part [t+1, hi] is empty and nothing is trimmed
    if hi > t:
        future_count = count_between(s, t + 1, hi)
        if future_count > spec.future:
            keep = spec.future - count_between(s, t + 1, hi - 1)
            interp[hi] = _smallest(s(hi), keep)
    return Stream(window.timeline, interp)


def index_substream(index_by, i: int, s: Stream) -> Stream:
    """The substream of atoms ``a`` with ``index_by(a) == i``; same timeline."""
    return Stream(s.timeline, {t: {a for a in atoms if index_by(a) == i} for t, atoms in s.items()})


def partition_window(spec: PartitionWindowSpec, s: Stream, t: int) -> Stream:
    _require_in(s, t, "partition window")
    parts = []
    for i, (past, future) in spec.counts:
        sub = index_substream(spec.index_by, i, s)
        parts.append(tuple_window(TupleWindowSpec(past, future, spec.mode), sub, t))
    lo = min(p.t_min for p in parts)
    hi = max(p.t_max for p in parts)
    interp: dict[int, set] = {}
    for p in parts:
        for t2, atoms in p.items():
            interp.setdefault(t2, set()).update(atoms)
    return Stream(Timeline(lo, hi), interp)


def apply_window(spec: WindowSpec, s: Stream, t: int) -> Stream:
    return spec.apply(s, t)


@dataclass(frozen=True)
class ExtendedWindow:
    """A window function paired with the stream choice that feeds it."""

    spec: WindowSpec
    choice: StreamChoice = StreamChoice.CURRENT

    def __call__(self, urstream: Stream, current: Stream, t: int) -> Stream:
        return self.spec.apply(StreamChoice(self.choice).pick(urstream, current), t)


@dataclass(frozen=True)
class WindowRegistry:
    """Maps each window operator index to its extended window function."""

    entries: tuple[tuple[int, ExtendedWindow], ...] = field(default=())

    def __init__(self, entries: Mapping[int, ExtendedWindow | tuple] | None = None):
        normalized = {}
        for i, ext in dict(entries or {}).items():
            if isinstance(i, bool) or not isinstance(i, int) or i < 1:
                raise InvalidSpec(f"window index must be a positive integer, got {i!r}")
            if not isinstance(ext, ExtendedWindow):
                spec, choice = ext
                ext = ExtendedWindow(spec, StreamChoice(choice))
            normalized[i] = ext
        object.__setattr__(self, "entries", tuple(sorted(normalized.items())))

    def __getitem__(self, i: int) -> ExtendedWindow:
        for j, ext in self.entries:
            if j == i:
                return ext
        raise UnregisteredWindow(i)

    def __contains__(self, i) -> bool:
        return any(j == i for j, _ in self.entries)

    def __iter__(self):
        return (j for j, _ in self.entries)

    def __len__(self):
        return len(self.entries)

    def without(self, *indices: int) -> WindowRegistry:
        return WindowRegistry({j: e for j, e in self.entries if j not in indices})


def apply_extended(reg: WindowRegistry, i: int, urstream: Stream, current: Stream, t: int) -> Stream:
    return reg[i](urstream, current, t)
