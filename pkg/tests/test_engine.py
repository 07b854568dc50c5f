import random

import pytest

from laminar import (
    NonGroundFormula,
    Query,
    QueryAssignment,
    Stream,
    Structure,
    TimeOutsideTimeline,
    TimeVar,
    TimeWindowSpec,
    Timeline,
    UnregisteredWindow,
    UnsafeQuery,
    WindowRegistry,
    answer,
    entails,
    enumerate_assignments,
    evaluate_continuous,
    parse_formula_text,
    parse_query_text,
)
from laminar.engine import active_domain

from .oracle import OracleTimeError, brute_answer, random_formula, random_registry, random_stream

Q1 = "win 1 (sometime tr(X,P) and sometime bus(Y,P)) [U]"
Q3 = "win 1 always (tr(X,P) -> win 2 sometime bus(Y,P)) [13]"


def assignment(x, y, p, **times):
    return QueryAssignment({"X": x, "Y": y, "P": p}, times)


def test_entails_examples(S, sliding5):
    f = parse_formula_text("win 1 (sometime tr(d,p2) and sometime bus(e,p2))")
    assert entails(sliding5, S, 11, f)
    g = parse_formula_text("win 1 sometime (tr(a,p1) and bus(c,p1))")
    assert entails(sliding5, S, 7, g)
    assert not entails(sliding5, S, 8, g)
    h = parse_formula_text("@ 2 tr(a,p1)")
    assert all(entails(sliding5, S, t, h) for t in S.timeline)


def test_entails_errors(S, sliding5):
    with pytest.raises(NonGroundFormula):
        entails(sliding5, S, 3, parse_formula_text("tr(X,p1)"))
    with pytest.raises(UnregisteredWindow):
        entails(sliding5, S, 3, parse_formula_text("win 4 tr(a,p1)"))
    with pytest.raises(TimeOutsideTimeline):
        entails(sliding5, S, 14, parse_formula_text("tr(a,p1)"))


def test_at_outside_window_is_false(S, sliding5):
    # tr(a,p1) arrives at 2, outside the window [6,11]
    assert not entails(sliding5, S, 11, parse_formula_text("win 1 @ 2 tr(a,p1)"))
    assert not entails(sliding5, S, 11, parse_formula_text("@ 20 tr(a,p1)"))


def test_enumerate_assignments(sliding5):
    q1 = parse_query_text(Q1)
    cands = enumerate_assignments(sliding5, q1)
    assert active_domain(sliding5, q1) == ["a", "c", "d", "e", "p1", "p2"]
    assert len(cands) == 6**3 * 14
    assert len(set(cands)) == len(cands)
    assert enumerate_assignments(sliding5, parse_query_text("tr(a,p1) [3]")) == [QueryAssignment()]
    assert len(enumerate_assignments(sliding5, parse_query_text("@ W tr(a,p1) [3]"))) == 14
    # query constants join the active domain
    assert "zz" in active_domain(sliding5, parse_query_text("tr(X,zz) [3]"))


def test_answer_q1(sliding5):
    got = answer(sliding5, parse_query_text(Q1))
    expected = [assignment("a", "c", "p1", U=t) for t in range(2, 8)]
    expected += [assignment("d", "e", "p2", U=t) for t in range(11, 14)]
    assert not got.ground
    assert list(got) == expected


def test_answer_exact_time_reference(sliding5):
    single = [assignment("a", "c", "p1", U=2)]
    assert list(answer(sliding5, parse_query_text("@ U (tr(X,P) and bus(Y,P)) [13]"))) == single
    assert list(answer(sliding5, parse_query_text("(tr(X,P) and bus(Y,P)) [U]"))) == single
    assert list(answer(sliding5, parse_query_text("(tr(X,P) and bus(Y,P)) [13]"))) == []


def test_answer_ground(sliding5):
    for t in range(14):
        a = answer(sliding5, Query(parse_formula_text("win 1 sometime (tr(a,p1) and bus(c,p1))"), t))
        assert a.ground and a.holds == (2 <= t <= 7)
    with pytest.raises(TimeOutsideTimeline):
        answer(sliding5, parse_query_text("tr(a,p1) [14]"))


def test_q3_is_unsafe_over_active_domain(nested):
    with pytest.raises(UnsafeQuery) as exc:
        answer(nested, parse_query_text(Q3))
    assert exc.value.variables == ("X",)
    relaxed = answer(nested, parse_query_text(Q3), allow_unsafe=True)
    # vacuous assignments (no tram X at stop P in the window) satisfy the implication
    assert assignment("c", "a", "p1") in relaxed.assignments
    assert len(relaxed) == 206


def test_q3_supported_grounding(nested, sliding5):
    got = answer(nested, parse_query_text(Q3), grounding="supported")
    assert list(got) == [assignment("a", "c", "p1"), assignment("d", "e", "p2")]
    assert all(a.tau == {} for a in got)
    for text in (Q1, "@ U (tr(X,P) and bus(Y,P)) [13]"):
        q = parse_query_text(text)
        assert answer(sliding5, q, grounding="supported") == answer(sliding5, q)


def test_unregistered_window_in_query(S):
    with pytest.raises(UnregisteredWindow):
        answer(Structure(S), parse_query_text("win 1 tr(X,p1) [3]"))


def test_evaluate_continuous(sliding5):
    ground_sweep = evaluate_continuous(sliding5, parse_query_text("win 1 sometime (tr(a,p1) and bus(c,p1)) [T]"))
    assert [t for t, a in ground_sweep if a.holds] == list(range(2, 8))
    assert [t for t, _ in ground_sweep] == list(range(14))
    never = evaluate_continuous(sliding5, parse_query_text("tr(z,z) [T]"))
    assert not any(a.holds for _, a in never)
    q1 = parse_query_text(Q1)
    full = answer(sliding5, q1)
    slices = evaluate_continuous(sliding5, q1)
    for t, a in slices:
        expected = [QueryAssignment(x.sigma) for x in full if x.tau["U"] == t]
        assert list(a) == expected
    with pytest.raises(ValueError):
        evaluate_continuous(sliding5, parse_query_text("tr(a,p1) [3]"))


def test_time_variable_shared_between_bracket_and_at(sliding5):
    # U fixes both the query time and the @ reference
    got = answer(sliding5, parse_query_text("@ U tr(X,p1) [U]"))
    assert list(got) == [QueryAssignment({"X": "a"}, {"U": 2})]


def test_nested_current_window_outside_time(S):
    # the tumbling window at 5 is [1,4]; a nested current-choice window at 5 has no valid input
    reg = WindowRegistry({1: (TimeWindowSpec(2, 1, 3), "current"), 2: (TimeWindowSpec(1), "current")})
    m = Structure(S, reg)
    with pytest.raises(TimeOutsideTimeline, match="win 2"):
        answer(m, parse_query_text("win 1 win 2 tr(a,p1) [5]"))
    assert answer(m, parse_query_text("win 1 sometime win 2 sometime tr(a,p1) [5]")).holds


def test_answers_match_oracle_small():
    rng = random.Random(5)
    compared = 0
    for _ in range(60):
        s, arity = random_stream(rng, max_len=6)
        reg = random_registry(rng)
        f = random_formula(rng, 3, arity, term_vars=("X",), time_vars=("U",), max_time=s.t_max + 1)
        q = Query(f, TimeVar("U") if rng.random() < 0.5 else rng.randint(s.t_min, s.t_max))
        m = Structure(s, reg)
        try:
            got = answer(m, q, allow_unsafe=True)
        except TimeOutsideTimeline:
            with pytest.raises(OracleTimeError):
                brute_answer(s, reg, q)
            continue
        expected = brute_answer(s, reg, q)
        if got.ground:
            assert got.holds == expected
        else:
            assert {(a.vars, a.times) for a in got} == expected
        compared += 1
    assert compared >= 30

