import pytest

from laminar import (
    IndexFunction,
    PartitionWindowSpec,
    Stream,
    Structure,
    TimeWindowSpec,
    Timeline,
    WindowRegistry,
    atom,
)

TRAFFIC = """\
# trams and buses arriving at stops
timeline 0 13
2 tr(a,p1), bus(c,p1)
8 tr(d,p2)
11 bus(e,p2)
"""


def traffic_stream():
    return Stream(
        Timeline(0, 13),
        {
            2: {atom("tr", "a", "p1"), atom("bus", "c", "p1")},
            8: {atom("tr", "d", "p2")},
            11: {atom("bus", "e", "p2")},
        },
    )


def last_two_trams():
    return PartitionWindowSpec(IndexFunction({"tr": 1}, default=2), {1: (2, 0), 2: (0, 0)})


@pytest.fixture
def S():
    return traffic_stream()


@pytest.fixture
def sliding5(S):
    return Structure(S, WindowRegistry({1: (TimeWindowSpec(5), "current")}))


@pytest.fixture
def nested(S):
    return Structure(
        S,
        WindowRegistry({1: (last_two_trams(), "current"), 2: (TimeWindowSpec(0, 3), "urstream")}),
    )


@pytest.fixture
def traffic_files(tmp_path):
    stream = tmp_path / "traffic.str"
    stream.write_text(TRAFFIC)
    sliding = tmp_path / "w.json"
    sliding.write_text('{"1": {"kind": "time", "past": 5, "future": 0, "step": 1, "input": "current"}}')
    nested = tmp_path / "nested.json"
    nested.write_text(
        """{
  "1": {"kind": "partition", "index": {"tr": 1}, "default": 2,
        "counts": {"1": [2, 0], "2": [0, 0]}, "input": "current"},
  "2": {"kind": "time", "past": 0, "future": 3, "input": "urstream"}
}"""
    )
    return {"stream": stream, "sliding": sliding, "nested": nested}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
