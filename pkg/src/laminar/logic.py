"""Formula and query syntax trees, groundness and substitution.

Terms are constants (lowercase identifiers) or variables (uppercase
identifiers). Time references inside ``@`` and in the query bracket are
either natural numbers or time variables; term variables and time
variables live in disjoint namespaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import MixedVariableNamespace
from .stream import GroundAtom


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TimeVar:
    name: str

    def __str__(self):
        return self.name


Term = Union[Const, Var]
TimeTerm = Union[int, TimeVar]


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def to_ground(self) -> GroundAtom:
        if any(not isinstance(a, Const) for a in self.args):
            raise ValueError(f"atom {self} is not ground")
        return GroundAtom(self.predicate, tuple(a.name for a in self.args))

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Sometime:
    body: Formula


@dataclass(frozen=True)
class Always:
    body: Formula


@dataclass(frozen=True)
class At:
    time: TimeTerm
    body: Formula


@dataclass(frozen=True)
class Win:
    index: int
    body: Formula


Formula = Union[Atom, Not, And, Or, Implies, Sometime, Always, At, Win]
UNARY = (Not, Sometime, Always)
BINARY = (And, Or, Implies)


@dataclass(frozen=True)
class Query:
    """A formula paired with the time at which it is asked."""

    formula: Formula
    at: TimeTerm

    def __post_init__(self):
        term_vars, time_vars = free_variables(self)
        clash = term_vars & time_vars
        if clash:
            raise MixedVariableNamespace(sorted(clash)[0])

    def __str__(self):
        from .io import format_query

        return format_query(self)


def _names(mapping) -> tuple:
    return tuple(sorted(dict(mapping or {}).items()))


@dataclass(frozen=True)
class QueryAssignment:
    """A pair of a variable assignment and a time variable assignment.

    Both parts are stored as sorted item tuples so assignments hash and
    compare structurally; ``sigma`` and ``tau`` give dict views.
    """

    vars: tuple[tuple[str, str], ...] = ()
    times: tuple[tuple[str, int], ...] = ()

    def __init__(self, vars: Mapping[str, str] | None = None, times: Mapping[str, int] | None = None):
        object.__setattr__(self, "vars", _names(vars))
        object.__setattr__(self, "times", _names(times))

    @property
    def sigma(self) -> dict[str, str]:
        return dict(self.vars)

    @property
    def tau(self) -> dict[str, int]:
        return dict(self.times)

    def sort_key(self):
        return (self.vars, self.times)

    def __repr__(self):
        return f"QueryAssignment({self.sigma}, {self.tau})"


EMPTY_ASSIGNMENT = QueryAssignment()


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (Not, Sometime, Always, At, Win)):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def atoms_of(f: Formula) -> Iterator[Atom]:
    return (g for g in subformulas(f) if isinstance(g, Atom))


def constants_of(x: Formula | Query) -> set[str]:
    f = x.formula if isinstance(x, Query) else x
    return {a.name for at in atoms_of(f) for a in at.args if isinstance(a, Const)}


def window_indices(x: Formula | Query) -> set[int]:
    f = x.formula if isinstance(x, Query) else x
    return {g.index for g in subformulas(f) if isinstance(g, Win)}


def free_variables(x: Formula | Query) -> tuple[frozenset, frozenset]:
    """Names of the term variables and time variables occurring in ``x``."""
    f = x.formula if isinstance(x, Query) else x
    term_vars = set()
    time_vars = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            term_vars.update(a.name for a in g.args if isinstance(a, Var))
        elif isinstance(g, At) and isinstance(g.time, TimeVar):
            time_vars.add(g.time.name)
    if isinstance(x, Query) and isinstance(x.at, TimeVar):
        time_vars.add(x.at.name)
    return frozenset(term_vars), frozenset(time_vars)


def is_ground(x: Formula | Query) -> bool:
    term_vars, time_vars = free_variables(x)
    return not term_vars and not time_vars


def _sub_term(a: QueryAssignment, term: Term) -> Term:
    if isinstance(term, Var):
        value = a.sigma.get(term.name)
        return term if value is None else Const(value)
    return term


def _sub_time(a: QueryAssignment, term: TimeTerm) -> TimeTerm:
    if isinstance(term, TimeVar):
        value = a.tau.get(term.name)
        return term if value is None else value
    return term


def substitute(a: QueryAssignment, x: Formula | Query) -> Formula | Query:
    """Apply ``a`` to every variable and time variable it maps; others pass through."""
    if isinstance(x, Query):
        return Query(substitute(a, x.formula), _sub_time(a, x.at))
    if isinstance(x, Atom):
        return Atom(x.predicate, tuple(_sub_term(a, t) for t in x.args))
    if isinstance(x, UNARY):
        return type(x)(substitute(a, x.body))
    if isinstance(x, BINARY):
        return type(x)(substitute(a, x.left), substitute(a, x.right))
    if isinstance(x, At):
        return At(_sub_time(a, x.time), substitute(a, x.body))
    if isinstance(x, Win):
        return Win(x.index, substitute(a, x.body))
    raise TypeError(f"not a formula: {x!r}")


def compatible(a: QueryAssignment, q: Query, timeline) -> bool:
    if not is_ground(substitute(a, q)):
        return False
    _, time_vars = free_variables(q)
    tau = a.tau
    return all(tau[u] in timeline for u in time_vars)


def negative_only_variables(f: Formula) -> set[str]:
    """Term variables all of whose occurrences sit under an odd number of negations.

    Both ``not`` and the antecedent of ``->`` flip polarity.
    """
    positive: set[str] = set()
    negative: set[str] = set()

    def walk(g, pos):
        if isinstance(g, Atom):
            names = {t.name for t in g.args if isinstance(t, Var)}
            (positive if pos else negative).update(names)
        elif isinstance(g, Not):
            walk(g.body, not pos)
        elif isinstance(g, Implies):
            walk(g.left, not pos)
            walk(g.right, pos)
        elif isinstance(g, BINARY):
            walk(g.left, pos)
            walk(g.right, pos)
        else:
            walk(g.body, pos)

    walk(f, True)
    return negative - positive
