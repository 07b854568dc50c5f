"""
Formulas and queries
====================

Formulas combine atoms with boolean connectives, ``sometime``/``always``
over the current window, ``@ t`` for an exact time and ``win i`` to switch
to the window registered under index ``i``.
"""

from pathlib import Path

from laminar import Structure, answer, evaluate_continuous, parse_query_text, parse_registry, parse_stream_file

data = Path(__file__).parent / "data"
S = parse_stream_file((data / "traffic.str").read_text())
M = Structure(S, parse_registry((data / "sliding5.json").read_text()))

# Did tram a and bus c meet at p1 within the last 5 minutes? Asked at every time point.
q = parse_query_text("win 1 sometime (tr(a,p1) and bus(c,p1)) [T]")
print("yes at:", [t for t, a in evaluate_continuous(M, q) if a.holds])

# Which tram X and bus Y both reached stop P within the last 5 minutes, and when (U)?
q1 = parse_query_text("win 1 (sometime tr(X,P) and sometime bus(Y,P)) [U]")
for a in answer(M, q1):
    print(a.sigma, a.tau)

# '@ U' selects the time point at which the body held; asked at 13 it replays history.
for text in ("@ U (tr(X,P) and bus(Y,P)) [13]", "(tr(X,P) and bus(Y,P)) [U]", "(tr(X,P) and bus(Y,P)) [13]"):
    print(f"{text:36}", [(a.sigma, a.tau) for a in answer(M, parse_query_text(text))])
