"""Clifford structure at the fermionic point and the square-root families.

Run: python3 demos/06_structure_checks.py
"""

from fractions import Fraction as F

from wirenet import closure
from wirenet.geometry import DParams

r = closure.structure_check_fermionic_D(DParams.from_turns(F(1, 4), F(1, 4), F(1, 4)))
print("fermionic:", r["status"], {k: v["status"] for k, v in r["subchecks"].items()})
print(f"   closure {r['closure_dim']} of {r['reference_full_dim']}")

for fam, t in (("(iii)", (0, F(1, 8), F(1, 8))), ("(iv)", (F(1, 8), 0, F(-1, 8))), ("(v)", (F(1, 8), F(-1, 8), 0))):
    r = closure.structure_check_family(DParams.from_turns(*t), fam)
    res = r["residuals"]
    print(f"family {fam}: squares {r['square_identities']}, commutation {r['commutation']}")
    print(f"   |A^2 - rho(x)| = {res['A2_equals_rho_x']:.2f}   |A^2 - rho(x)*| = {res['A2_equals_rho_x_adjoint']:.1e}")
    print(f"   |[A, rho(U)]| = {res['A_rhoU_commutator']:.2f}   quotient: {r['quotient']}")
