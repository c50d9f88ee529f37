"""The three wire networks as quotient graphs, and how a field becomes phases.

Run: python3 demos/01_lattices.py
"""

import math

from wirenet.geometry import FieldB, builtin_lattice, d_params_from_field, g_params_from_field

for name in ("P", "D", "G"):
    spec = builtin_lattice(name)
    print(f"{name}: {spec.vertex_count} vertices, {len(spec.edges)} edges, tree edges {spec.tree_edges}")
    for e in spec.edges:
        print(f"   {e.tail} -> {e.head}  {[str(c) for c in e.vector]}")

# a field along z; chi_i = exp(i pi Theta) reproduces the geometric commutators exactly
B = FieldB(0.0, 0.0, 2 * math.pi * 0.37)
d = d_params_from_field(B)
print("\nD phases chi:", [f"{z:.4f}" for z in d.chi])
print("D commutators q:", [f"{z:.4f}" for z in d.q])
g = g_params_from_field(B)
print("G phases phi:", [f"{z:.4f}" for z in g.phi], " Phi =", f"{g.Phi:.4f}")
