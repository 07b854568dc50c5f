import random

import pytest

from laminar import (
    EntryOutsideTimeline,
    GroundAtom,
    IntervalNotContained,
    Stream,
    Timeline,
    atom,
    cardinality,
    is_window_of,
    make_stream,
    restrict,
)

from .oracle import random_stream


def test_make_stream_traffic(S):
    s = make_stream(
        Timeline(0, 13),
        {2: {atom("tr", "a", "p1"), atom("bus", "c", "p1")}, 8: {atom("tr", "d", "p2")}, 11: {atom("bus", "e", "p2")}},
    )
    assert s == S
    assert s(2) == {atom("tr", "a", "p1"), atom("bus", "c", "p1")}
    assert s(5) == frozenset()
    assert s(40) == frozenset()


def test_empty_stream():
    s = make_stream(Timeline(0, 0), {})
    assert s(0) == frozenset()
    assert cardinality(s) == 0


def test_entry_outside_timeline():
    with pytest.raises(EntryOutsideTimeline) as exc:
        make_stream(Timeline(0, 5), {7: {atom("p")}})
    assert exc.value.t == 7


def test_empty_entries_are_not_stored():
    assert make_stream(Timeline(0, 3), {1: set()}) == make_stream(Timeline(0, 3))


@pytest.mark.parametrize("lo,hi", [(-1, 3), (2, -4), (1.5, 3)])
def test_bad_timeline(lo, hi):
    with pytest.raises(ValueError):
        Timeline(lo, hi)


def test_empty_interval():
    empty = Timeline(4, 2)
    assert empty.is_empty and len(empty) == 0 and list(empty) == []
    assert empty == Timeline(9, 0)
    assert empty.issubset(Timeline(0, 0))
    assert 3 not in empty
    s = Stream(Timeline(0, 5), {1: {atom("p")}})
    assert restrict(s, empty) == Stream(Timeline(1, 0))
    assert is_window_of(restrict(s, empty), s)


def test_atom_validation_and_order():
    with pytest.raises(ValueError):
        GroundAtom("Tr", ("a",))
    with pytest.raises(ValueError):
        GroundAtom("tr", ("X",))
    ordered = sorted([atom("tr", "a", "p1"), atom("bus", "c", "p1"), atom("bus"), atom("bus", "a")])
    assert [str(a) for a in ordered] == ["bus", "bus(a)", "bus(c,p1)", "tr(a,p1)"]


def test_restrict(S):
    r = restrict(S, Timeline(6, 11))
    assert r == Stream(Timeline(6, 11), {8: {atom("tr", "d", "p2")}, 11: {atom("bus", "e", "p2")}})
    assert restrict(S, Timeline(0, 13)) == S
    assert restrict(S, Timeline(3, 7)) == Stream(Timeline(3, 7))
    with pytest.raises(IntervalNotContained):
        restrict(S, Timeline(5, 20))


def test_cardinality(S):
    assert cardinality(S) == 4
    assert cardinality(restrict(S, Timeline(6, 11))) == 2


def test_is_window_of(S):
    r = restrict(S, Timeline(6, 11))
    assert is_window_of(r, S)
    assert not is_window_of(S, r)
    assert is_window_of(S, S)
    extra = Stream(Timeline(6, 11), {8: {atom("tr", "d", "p2"), atom("tr", "x", "p2")}})
    assert not is_window_of(extra, S)


def _random_subinterval(rng, tl):
    a = rng.randint(tl.t_min, tl.t_max)
    b = rng.randint(a, tl.t_max)
    return Timeline(a, b)


def test_algebra_laws_random():
    rng = random.Random(7)
    for _ in range(300):
        s, _ = random_stream(rng)
        iv1 = _random_subinterval(rng, s.timeline)
        iv2 = _random_subinterval(rng, iv1)
        r1 = restrict(s, iv1)
        assert is_window_of(r1, s)
        assert cardinality(r1) <= cardinality(s)
        assert restrict(r1, iv2) == restrict(s, iv2)
        r2 = restrict(r1, iv2)
        # reflexive and transitive
        assert is_window_of(s, s)
        assert is_window_of(r2, r1) and is_window_of(r2, s)
