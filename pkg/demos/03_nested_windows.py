"""
Nested windows
==============

``win 1`` keeps only the last two trams; inside it, ``win 2`` looks three
minutes ahead in the *original* stream, where the buses still are.
"""

from pathlib import Path

from laminar import Structure, UnsafeQuery, answer, parse_query_text, parse_registry, parse_stream_file

data = Path(__file__).parent / "data"
S = parse_stream_file((data / "traffic.str").read_text())
M = Structure(S, parse_registry((data / "nested.json").read_text()))

print("win 1 at 13:", M.registry[1](S, S, 13))
for t in (2, 8):
    print(f"win 2 at {t}:", M.registry[2](S, S, t))

q3 = parse_query_text("win 1 always (tr(X,P) -> win 2 sometime bus(Y,P)) [13]")

# X only occurs on the left of '->', so any X that never appears as a tram
# satisfies the implication vacuously. The default grounding refuses.
try:
    answer(M, q3)
except UnsafeQuery as exc:
    print("default grounding:", exc)

vacuous = answer(M, q3, allow_unsafe=True)
print("active-domain answer has", len(vacuous), "assignments")

# Supported grounding only binds variables so that every atom of the query
# occurs somewhere in the stream.
for a in answer(M, q3, grounding="supported"):
    print("supported:", a.sigma, a.tau)
