"""Predicted vs observed algebra type at a few exact parameter points.

Run: python3 demos/05_classification.py
"""

from fractions import Fraction as F

from wirenet import closure

points = [
    ("D", (0, 0, 0)),
    ("D", (F(1, 4), F(1, 4), F(1, 4))),
    ("D", (F(1, 8), 0, F(1, 4))),
    ("D", (0, F(1, 8), F(1, 8))),  # family (iii): observed Full, see the decision ledger
    ("G", (F(1, 2), F(1, 2), 0)),
    ("G", (0, F(1, 4), F(1, 2))),
]
for lat, t in points:
    v = closure.classify_point(lat, closure.params_from_turns(lat, t))
    flag = "ok" if v.agree else "DISAGREE"
    print(f"{lat} {[str(x) for x in v.turns]} case {v.predicted_case:<11} predicted {v.predicted:<16} "
          f"observed {v.observed:<16} dim {v.closure_dim}/{v.reference_full_dim} [{flag}]")
