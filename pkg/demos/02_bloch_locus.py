"""Zero-field band degeneracies: three circles for D, four points for G.

Run: python3 demos/02_bloch_locus.py
"""

import numpy as np

from wirenet import bloch
from wirenet.bloch import Character

print("G at (-1, 1, -1):", np.round(bloch.spectrum_at("G", Character(-1, 1, -1)).eigenvalues, 12))

N = 64
rep = bloch.degeneracy_scan("D", N, 1e-6)
d = max(bloch.d_locus_distance(p.phi) for p in rep.points) / (2 * np.pi / N)
print(f"D: {len(rep.points)} degenerate grid points, all within {d:.3f} spacings of the circles")

rep = bloch.degeneracy_scan("G", 48, 1e-6, refine=True)
print(f"G: {len(rep.clusters)} refined clusters")
for c in rep.clusters:
    print("   phi =", np.round(c.phi, 6), " pattern", c.pattern, " eigenvalues", np.round(c.eigenvalues, 6))
