"""Streams over a bounded discrete timeline and the basic stream algebra."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import EntryOutsideTimeline, IntervalNotContained

IDENT_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def _check_ident(name, what):
    if not isinstance(name, str) or not IDENT_RE.match(name):
        raise ValueError(f"{what} must be an identifier starting with a lowercase letter, got {name!r}")


@functools.total_ordering
@dataclass(frozen=True, eq=True)
class GroundAtom:
    """A predicate applied to constants, e.g. ``tr(a,p1)``.

    Atoms are totally ordered by predicate name, then arity, then the
    argument tuple. Tuple-based windows rely on this order to decide which
    atoms survive at a window boundary.
    """

    predicate: str
    args: tuple[str, ...] = ()

    def __post_init__(self):
        _check_ident(self.predicate, "predicate")
        args = tuple(self.args)
        for a in args:
            _check_ident(a, "constant")
        object.__setattr__(self, "args", args)

    def sort_key(self):
        return (self.predicate, len(self.args), self.args)

    def __lt__(self, other):
        if not isinstance(other, GroundAtom):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


def atom(predicate: str, *args: str) -> GroundAtom:
    return GroundAtom(predicate, args)


@dataclass(frozen=True, eq=False)
class Timeline:
    """The closed interval ``[t_min, t_max]`` of time points.

    ``t_min > t_max`` denotes the empty interval. Time-based windows whose
    pivot range falls before the start of the input produce it; all empty
    intervals compare equal.
    """

    t_min: int
    t_max: int

    def __post_init__(self):
        for v in (self.t_min, self.t_max):
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ValueError(f"time points are non-negative integers, got {v!r}")

    @property
    def is_empty(self) -> bool:
        return self.t_min > self.t_max

    def __contains__(self, t) -> bool:
        return self.t_min <= t <= self.t_max

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.t_min, self.t_max + 1))

    def __len__(self) -> int:
        return max(0, self.t_max - self.t_min + 1)

    def issubset(self, other: Timeline) -> bool:
        if self.is_empty:
            return True
        return other.t_min <= self.t_min and self.t_max <= other.t_max

    def __eq__(self, other):
        if not isinstance(other, Timeline):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return (self.t_min, self.t_max) == (other.t_min, other.t_max)

    def __hash__(self):
        return hash(None) if self.is_empty else hash((self.t_min, self.t_max))

    def __str__(self):
        return f"[{self.t_min},{self.t_max}]"


_EMPTY: frozenset = frozenset()


class Stream:
    """An immutable pair of a timeline and an interpretation.

    The interpretation is total over the naturals: any time point that is
    not stored (in particular every point outside the timeline) maps to the
    empty set. Only non-empty in-timeline entries are kept, so two streams
    compare equal exactly when their timelines and interpretations agree.
    """

    __slots__ = ("_timeline", "_interp", "_hash")

    def __init__(self, timeline: Timeline, interp: Mapping[int, Iterable[GroundAtom]] | None = None):
        entries = {}
        for t, atoms in (interp or {}).items():
            if t not in timeline:
                raise EntryOutsideTimeline(t, timeline)
            atoms = frozenset(atoms)
            for a in atoms:
                if not isinstance(a, GroundAtom):
                    raise TypeError(f"expected GroundAtom, got {a!r}")
            if atoms:
                entries[t] = atoms
        self._timeline = timeline
        self._interp = dict(sorted(entries.items()))
        self._hash = None

    @property
    def timeline(self) -> Timeline:
        return self._timeline

    @property
    def t_min(self) -> int:
        return self._timeline.t_min

    @property
    def t_max(self) -> int:
        return self._timeline.t_max

    def __call__(self, t: int) -> frozenset:
        return self._interp.get(t, _EMPTY)

    at = __call__

    def items(self):
        """Non-empty ``(t, atoms)`` entries in ascending time order."""
        return self._interp.items()

    def atoms(self) -> frozenset:
        """Every atom occurring anywhere in the stream."""
        out = set()
        for s in self._interp.values():
            out |= s
        return frozenset(out)

    def __eq__(self, other):
        if not isinstance(other, Stream):
            return NotImplemented
        return self._timeline == other._timeline and self._interp == other._interp

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._timeline, tuple(self._interp.items())))
        return self._hash

    def __repr__(self):
        body = ", ".join(
            f"{t}: {{{', '.join(str(a) for a in sorted(atoms))}}}" for t, atoms in self._interp.items()
        )
        return f"Stream({self._timeline}, {{{body}}})"


def make_stream(timeline: Timeline, entries: Mapping[int, Iterable[GroundAtom]] | None = None) -> Stream:
    return Stream(timeline, entries)


def restrict(s: Stream, iv: Timeline) -> Stream:
    if not iv.issubset(s.timeline):
        raise IntervalNotContained(iv, s.timeline)
    return Stream(iv, {t: atoms for t, atoms in s.items() if t in iv})


def cardinality(s: Stream) -> int:
    return sum(len(atoms) for atoms in s._interp.values())


def count_between(s: Stream, lo: int, hi: int) -> int:
    """Number of atoms of ``s`` at time points in ``[lo, hi]``; zero if the range is empty."""
    return sum(len(atoms) for t, atoms in s.items() if lo <= t <= hi)


def is_window_of(s1: Stream, s2: Stream) -> bool:
    if not s1.timeline.issubset(s2.timeline):
        return False
    return all(atoms <= s2(t) for t, atoms in s1.items())
