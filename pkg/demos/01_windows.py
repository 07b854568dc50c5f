"""
Streams and window functions
============================

A stream is a timeline plus the atoms observed at each time point. Window
functions cut a substream out of it relative to a query time.
"""

from pathlib import Path

from laminar import (
    IndexFunction,
    PartitionWindowSpec,
    TimeWindowSpec,
    TupleWindowSpec,
    parse_stream_file,
)

S = parse_stream_file((Path(__file__).parent / "data" / "traffic.str").read_text())
print(S)

# Sliding window over the last 5 ticks.
for t in (5, 11):
    print(f"last 5 ticks at {t}:", TimeWindowSpec(5).apply(S, t))

# Tumbling window: 2 back and 1 forward from the pivot floor(t/3)*3.
# Query times 3, 4 and 5 share the pivot 3 and hence the same window.
tumbling = TimeWindowSpec(past=2, future=1, step=3)
for t in (3, 4, 5, 11):
    print(f"tumbling at {t}:", tumbling.apply(S, t))

# The last three atoms before 11. Two of them arrive together at 2, so the
# exact mode has to drop one; it keeps the smaller under the atom order.
print("exact   :", TupleWindowSpec(3, 0, "exact-ordered").apply(S, 11))
print("at-least:", TupleWindowSpec(3, 0, "at-least").apply(S, 11))

# Partition by predicate: the last two trams, no buses at all.
trams = PartitionWindowSpec(IndexFunction({"tr": 1}, default=2), {1: (2, 0), 2: (0, 0)})
print("last two trams at 13:", trams.apply(S, 13))
