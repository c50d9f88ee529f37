"""Exact normal-ordered arithmetic in the D torus and the row reduction of H.

Run: python3 demos/03_symbolic_chain.py
"""

from wirenet import symbolic
from wirenet.symbolic import D_RELATIONS, TorusElement, normal_product

U, V, W = TorusElement.generators(D_RELATIONS)
print("V U =", normal_product(V, U))
print("W V U =", normal_product(W, normal_product(V, U)))

for report in (symbolic.verify_X3(), symbolic.verify_X6(), symbolic.verify_phase_relations()):
    print(report["check"], report["status"], report.get("mismatches") or "")

# conjugating with the printed tail words leaves more than a single corner term
X3 = symbolic.x_chain()[3]
for label, tail in (("corrected", symbolic.x_chain_tail), ("as printed", symbolic.x_chain_tail_literal)):
    X6 = tail(X3)[2]
    print(f"{label} tail: nonzero entries {X6.nonzero_positions()}, corner words {len(X6[0, 1].terms)}")
