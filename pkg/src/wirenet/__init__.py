"""Harper operators and noncommutative tori for the P, D and G wire networks."""

from .bloch import Character, degeneracy_scan, evaluate_at_character, spectrum_at
from .closure import classify_point, span_closure, structure_check_family, structure_check_fermionic_D
from .geometry import DParams, FieldB, GParams, LatticeSpec, Vec3, builtin_lattice, load_lattice
from .repn import RationalSkew, TorusRep, Twist, butterfly, harper_rep, rho_rep, torus_rep
from .symbolic import PhasePoly, TorusElement, TorusMatrix, harper_symbolic, verify_X3, verify_X6

__all__ = [
    "Character",
    "DParams",
    "FieldB",
    "GParams",
    "LatticeSpec",
    "PhasePoly",
    "RationalSkew",
    "TorusElement",
    "TorusMatrix",
    "TorusRep",
    "Twist",
    "Vec3",
    "builtin_lattice",
    "butterfly",
    "classify_point",
    "degeneracy_scan",
    "evaluate_at_character",
    "harper_rep",
    "harper_symbolic",
    "load_lattice",
    "rho_rep",
    "span_closure",
    "spectrum_at",
    "structure_check_family",
    "structure_check_fermionic_D",
    "torus_rep",
    "verify_X3",
    "verify_X6",
]
