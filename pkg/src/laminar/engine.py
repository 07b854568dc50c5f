"""Entailment and query answering over a structure.

A structure fixes the urstream and the window registry. Truth of a ground
formula is evaluated relative to a current window (initially the urstream)
and a time point; ``win i`` replaces the current window by the registered
window function applied to either the urstream or the current window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import NonGroundFormula, TimeOutsideTimeline, UnregisteredWindow, UnsafeQuery
from .logic import (
    And,
    Always,
    At,
    Atom,
    Formula,
    Implies,
    Not,
    Or,
    Query,
    QueryAssignment,
    Sometime,
    TimeVar,
    Win,
    atoms_of,
    constants_of,
    free_variables,
    is_ground,
    negative_only_variables,
    substitute,
    window_indices,
)
from .stream import Stream
from .windows import WindowRegistry

GROUNDINGS = ("active", "supported")


@dataclass(frozen=True)
class Structure:
    urstream: Stream
    registry: WindowRegistry = WindowRegistry()

    @property
    def timeline(self):
        return self.urstream.timeline

    def check_registered(self, x) -> None:
        for i in sorted(window_indices(x)):
            if i not in self.registry:
                raise UnregisteredWindow(i)


@dataclass(frozen=True)
class EvalContext:
    structure: Structure
    current: Stream
    t: int


class _Evaluator:
    # windows are memoized per (index, current window, time) for one run
    def __init__(self, m: Structure):
        self.m = m
        self.cache: dict = {}

    def window(self, i: int, s: Stream, t: int) -> Stream:
        key = (i, s, t)
        hit = self.cache.get(key)
        if hit is None:
            try:
                hit = self.m.registry[i](self.m.urstream, s, t)
            except TimeOutsideTimeline as exc:
                raise TimeOutsideTimeline(exc.t, exc.timeline, f"win {i}") from None
            self.cache[key] = hit
        return hit

    def holds(self, s: Stream, t: int, f: Formula) -> bool:
        if isinstance(f, Atom):
            return f.to_ground() in s(t)
        if isinstance(f, Not):
            return not self.holds(s, t, f.body)
        if isinstance(f, And):
            return self.holds(s, t, f.left) and self.holds(s, t, f.right)
        if isinstance(f, Or):
            return self.holds(s, t, f.left) or self.holds(s, t, f.right)
        if isinstance(f, Implies):
            return not self.holds(s, t, f.left) or self.holds(s, t, f.right)
        if isinstance(f, Sometime):
            return any(self.holds(s, t2, f.body) for t2 in s.timeline)
        if isinstance(f, Always):
            return all(self.holds(s, t2, f.body) for t2 in s.timeline)
        if isinstance(f, At):
            return f.time in s.timeline and self.holds(s, f.time, f.body)
        if isinstance(f, Win):
            return self.holds(self.window(f.index, s, t), t, f.body)
        raise TypeError(f"not a formula: {f!r}")


def entails(m: Structure, s: Stream, t: int, f: Formula) -> bool:
    """Whether ``(m, s, t)`` entails the ground formula ``f``."""
    if not is_ground(f):
        raise NonGroundFormula(f"formula is not ground: {f}")
    if t not in m.timeline:
        raise TimeOutsideTimeline(t, m.timeline, "evaluation time")
    m.check_registered(f)
    return _Evaluator(m).holds(s, t, f)


@dataclass(frozen=True)
class Answer:
    """``yes``/``no`` for a ground query, else the satisfying assignments in canonical order."""

    ground: bool
    holds: bool = False
    assignments: tuple[QueryAssignment, ...] = ()

    @classmethod
    def yes_no(cls, value: bool) -> Answer:
        return cls(ground=True, holds=bool(value))

    @classmethod
    def of(cls, assignments: Iterable[QueryAssignment]) -> Answer:
        return cls(ground=False, assignments=tuple(sorted(set(assignments), key=QueryAssignment.sort_key)))

    def __len__(self):
        return len(self.assignments)

    def __iter__(self):
        return iter(self.assignments)


def active_domain(m: Structure, q: Query) -> list[str]:
    consts = {c for a in m.urstream.atoms() for c in a.args}
    return sorted(consts | constants_of(q))


def enumerate_assignments(m: Structure, q: Query) -> list[QueryAssignment]:
    """Every assignment of the active domain to the term variables and of the
    timeline to the time variables of ``q``."""
    term_vars, time_vars = (sorted(v) for v in free_variables(q))
    domain = active_domain(m, q)
    times = list(m.timeline)
    out = []
    for values in itertools.product(domain, repeat=len(term_vars)):
        sigma = dict(zip(term_vars, values))
        for points in itertools.product(times, repeat=len(time_vars)):
            out.append(QueryAssignment(sigma, dict(zip(time_vars, points))))
    return out


def _supported(m: Structure, q: Query, candidates):
    facts = m.urstream.atoms()
    open_atoms = [a for a in set(atoms_of(q.formula)) if not is_ground(a)]
    for a in candidates:
        if all(substitute(a, atom).to_ground() in facts for atom in open_atoms):
            yield a


def answer(m: Structure, q: Query, grounding: str = "active", allow_unsafe: bool = False) -> Answer:
    """Answer ``q`` against ``m``.

    Non-ground queries are grounded over the active domain. A term variable
    that only occurs negatively could be satisfied by constants outside that
    domain, so such queries raise ``UnsafeQuery`` unless ``allow_unsafe`` is
    set, in which case the answer is the active-domain answer.

    ``grounding="supported"`` additionally keeps only assignments under
    which every non-ground atom of the query becomes an atom that occurs
    somewhere in the urstream. This yields finite answers for any query and
    never needs the safety check.
    """
    if grounding not in GROUNDINGS:
        raise ValueError(f"grounding must be one of {GROUNDINGS}, got {grounding!r}")
    m.check_registered(q)
    ev = _Evaluator(m)
    if is_ground(q):
        if q.at not in m.timeline:
            raise TimeOutsideTimeline(q.at, m.timeline, "query time")
        return Answer.yes_no(ev.holds(m.urstream, q.at, q.formula))
    if grounding == "active" and not allow_unsafe:
        unsafe = negative_only_variables(q.formula)
        if unsafe:
            raise UnsafeQuery(unsafe)
    candidates = enumerate_assignments(m, q)
    if grounding == "supported":
        candidates = _supported(m, q, candidates)
    found = []
    for a in candidates:
        g = substitute(a, q)
        if ev.holds(m.urstream, g.at, g.formula):
            found.append(a)
    return Answer.of(found)


def evaluate_continuous(m: Structure, q: Query, **kwargs) -> list[tuple[int, Answer]]:
    """Answer ``q`` once per time point of the urstream, with its query-time
    variable fixed to that point."""
    if not isinstance(q.at, TimeVar):
        raise ValueError("continuous evaluation needs a query whose time is a time variable")
    results = []
    for t in m.timeline:
        fixed = substitute(QueryAssignment(times={q.at.name: t}), q)
        results.append((t, answer(m, fixed, **kwargs)))
    return results
