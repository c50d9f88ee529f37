"""Rational-flux band edges on the P lattice (field along an axis).

Run: python3 demos/04_butterfly.py
"""

from wirenet import repn

res = repn.butterfly("P", "12", denominators=range(1, 8), twist_grid_m=8)
for f in res["fluxes"]:
    bands = " ".join(f"[{lo:+.2f},{hi:+.2f}]" for lo, hi in f["bands"])
    print(f"{f['p']:>2}/{f['N']:<2} {len(f['bands'])} band(s) {bands}")
