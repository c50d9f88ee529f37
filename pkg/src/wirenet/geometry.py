"""Lattice data for the P, D and G wire networks and the magnetic 2-form.

All lattice vectors are exact rationals.  Floating point only enters once a
magnetic field is paired with two vectors through :func:`theta_of`.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

TORUS_UNITS = "torus"
RADIAN_UNITS = "radian"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("lattice coordinates must be exact (int, Fraction or 'p/q' string)")
    return Fraction(x)


@dataclass(frozen=True)
class Vec3:
    """Exact rational 3-vector."""

    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))
        object.__setattr__(self, "z", _frac(self.z))

    @classmethod
    def of(cls, *coords, scale=1) -> "Vec3":
        s = _frac(scale)
        return cls(*(s * _frac(c) for c in coords))

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, s) -> "Vec3":
        s = _frac(s)
        return Vec3(s * self.x, s * self.y, s * self.z)

    __rmul__ = __mul__

    def dot(self, other: "Vec3") -> Fraction:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def to_float(self) -> np.ndarray:
        return np.array([float(self.x), float(self.y), float(self.z)])

    def to_json(self) -> list[str]:
        return [str(c) for c in self]

    @classmethod
    def from_json(cls, data: Sequence) -> "Vec3":
        if len(data) != 3:
            raise ValueError(f"expected 3 coordinates, got {len(data)}")
        return cls(*(Fraction(str(c)) for c in data))


ZERO = Vec3(0, 0, 0)


@dataclass(frozen=True)
class FieldB:
    """Constant magnetic field.  ``B = 2*pi*Theta`` so one flux quantum per unit area is ``2*pi``."""

    b1: float
    b2: float
    b3: float

    def __post_init__(self):
        for b in (self.b1, self.b2, self.b3):
            if not math.isfinite(b):
                raise ValueError(f"field components must be finite, got {b!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.b1, self.b2, self.b3], dtype=float)


def theta_of(B: FieldB, v: Vec3, w: Vec3) -> float:
    """Magnetic bilinear form ``Theta(v, w) = B . (v x w) / (2 pi)``."""
    c = v.cross(w)
    return (B.b1 * float(c.x) + B.b2 * float(c.y) + B.b3 * float(c.z)) / TWO_PI


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    vector: Vec3


@dataclass(frozen=True)
class LatticeSpec:
    """Quotient graph of a periodic wire network together with its embedding data.

    ``edges`` carry the displacement from the tail vertex to the head vertex of a
    lift of the edge.  ``tree_edges`` index into ``edges`` and together with
    ``tree_root`` fix the gauge of the matrix representation.
    """

    name: str
    vertex_count: int
    edges: tuple[Edge, ...]
    basis: tuple[Vec3, Vec3, Vec3]
    tree_root: int = 0
    tree_edges: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "tree_edges", tuple(self.tree_edges))
        k = self.vertex_count
        if k < 1:
            raise ValueError("vertex_count must be positive")
        for e in self.edges:
            if not (0 <= e.tail < k and 0 <= e.head < k):
                raise ValueError(f"edge {e} references a missing vertex")
        if len(self.basis) != 3:
            raise ValueError("translation basis needs three vectors")
        if self.basis[0].dot(self.basis[1].cross(self.basis[2])) == 0:
            raise ValueError("translation basis is degenerate")
        if not 0 <= self.tree_root < k:
            raise ValueError("tree root out of range")
        if len(self.tree_edges) != k - 1:
            raise ValueError(f"spanning tree must have {k - 1} edges, got {len(self.tree_edges)}")
        # tree must reach every vertex; this also proves the quotient graph connected
        self.vertex_positions()

    @property
    def k(self) -> int:
        return self.vertex_count

    def vertex_positions(self) -> list[Vec3]:
        """Positions of the vertices reached from the root along the spanning tree."""
        pos: dict[int, Vec3] = {self.tree_root: ZERO}
        pending = [self.edges[i] for i in self.tree_edges]
        while pending:
            progressed = False
            for e in list(pending):
                if e.tail in pos and e.head not in pos:
                    pos[e.head] = pos[e.tail] + e.vector
                elif e.head in pos and e.tail not in pos:
                    pos[e.tail] = pos[e.head] - e.vector
                elif e.head in pos and e.tail in pos:
                    raise ValueError("spanning tree contains a cycle")
                else:
                    continue
                pending.remove(e)
                progressed = True
            if not progressed:
                raise ValueError("spanning tree does not connect to the root")
        if len(pos) != self.vertex_count:
            raise ValueError("spanning tree does not touch every vertex")
        return [pos[v] for v in range(self.vertex_count)]

    def cycle_vectors(self) -> list[Vec3]:
        """For each edge, the lattice translation closing it against the tree."""
        pos = self.vertex_positions()
        return [pos[e.tail] + e.vector - pos[e.head] for e in self.edges]

    def lattice_coordinates(self, v: Vec3) -> tuple[Fraction, Fraction, Fraction]:
        """Coordinates of ``v`` in the translation basis (exact Cramer's rule)."""
        b1, b2, b3 = self.basis
        det = b1.dot(b2.cross(b3))
        return (
            v.dot(b2.cross(b3)) / det,
            b1.dot(v.cross(b3)) / det,
            b1.dot(b2.cross(v)) / det,
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": self.vertex_count,
            "edges": [[e.tail, e.head, e.vector.to_json()] for e in self.edges],
            "basis": [b.to_json() for b in self.basis],
            "tree": {"root": self.tree_root, "edges": list(self.tree_edges)},
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "LatticeSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            edges = [Edge(int(t), int(h), Vec3.from_json(v)) for t, h, v in data["edges"]]
            basis = tuple(Vec3.from_json(b) for b in data["basis"])
            tree = data.get("tree", {"root": 0, "edges": []})
            return cls(
                name=str(data["name"]),
                vertex_count=int(data["vertices"]),
                edges=tuple(edges),
                basis=basis,
                tree_root=int(tree["root"]),
                tree_edges=tuple(int(i) for i in tree["edges"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed lattice spec: {exc}") from exc


def _q(*c) -> Vec3:
    return Vec3.of(*c, scale=Fraction(1, 4))


def _h(*c) -> Vec3:
    return Vec3.of(*c, scale=Fraction(1, 2))


# Diamond: the four bonds from a vertex to the centre of its tetrahedron.
D_EDGES = (_q(1, 1, 1), _q(-1, -1, 1), _q(-1, 1, -1), _q(1, -1, -1))
D_TETRA = (_h(-1, -1, 0), _h(-1, 0, -1), _h(0, -1, -1))

# Gyroid: bcc generators and the six edge vectors of the quotient graph.
G_BCC = (_h(1, -1, 1), _h(-1, 1, 1), _h(1, 1, -1))
G_EDGES = (
    _q(-1, 1, 0),
    _q(0, -1, 1),
    _q(1, 0, -1),
    _q(1, 1, 0),
    _q(0, -1, -1),
    _q(-1, 0, -1),
)
# (tail, head) of e1..e6 with vertices A, B, C, D = 0, 1, 2, 3
G_INCIDENCE = ((0, 1), (0, 2), (0, 3), (3, 2), (3, 1), (1, 2))

_STD = (Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))


def builtin_lattice(name: str) -> LatticeSpec:
    """The P (simple cubic), D (diamond) or G (gyroid) quotient graph."""
    key = name.strip().upper()
    if key == "P":
        return LatticeSpec("P", 1, tuple(Edge(0, 0, v) for v in _STD), _STD, 0, ())
    if key == "D":
        return LatticeSpec("D", 2, tuple(Edge(0, 1, v) for v in D_EDGES), D_TETRA, 0, (0,))
    if key == "G":
        edges = tuple(Edge(t, h, v) for (t, h), v in zip(G_INCIDENCE, G_EDGES))
        return LatticeSpec("G", 4, edges, G_BCC, 0, (0, 1, 2))
    raise ValueError(f"unknown lattice {name!r}; expected one of P, D, G")


def load_lattice(path_or_name: str) -> LatticeSpec:
    """Builtin lattice by name, otherwise a JSON spec file."""
    if path_or_name.strip().upper() in ("P", "D", "G"):
        return builtin_lattice(path_or_name)
    with open(path_or_name) as fh:
        return LatticeSpec.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# phase parameters


def unit(turns: float | Fraction) -> complex:
    """``exp(2 pi i * turns)``."""
    t = float(turns) % 1.0
    return cmath.exp(1j * TWO_PI * t)


def _check_unit(name: str, z: complex, tol: float = 1e-12) -> None:
    if abs(abs(z) - 1.0) > tol:
        raise ValueError(f"{name} must have modulus one, got |{name}|={abs(z)}")


def q_from_chi(chi1: complex, chi2: complex, chi3: complex) -> tuple[complex, complex, complex]:
    """Commutation phases of the D torus from the chi phases."""
    c1, c2, c3 = chi1.conjugate(), chi2.conjugate(), chi3.conjugate()
    q1 = c1**2 * chi2**2 * chi3**2
    q2 = c1**6 * c2**2 * c3**2
    q3 = c1**2 * c2**6 * chi3**2
    return q1, q2, q3


def q_turns_from_chi_turns(a1, a2, a3) -> tuple[Fraction, Fraction, Fraction]:
    a1, a2, a3 = (Fraction(a) for a in (a1, a2, a3))
    return (
        (-2 * a1 + 2 * a2 + 2 * a3) % 1,
        (-6 * a1 - 2 * a2 - 2 * a3) % 1,
        (-2 * a1 - 6 * a2 + 2 * a3) % 1,
    )


def eighth_power_residuals(chi, q) -> np.ndarray:
    """Residuals of the eighth-power relations that recover chi from q."""
    (c1, c2, c3), (q1, q2, q3) = chi, q
    qb1, qb2, qb3 = q1.conjugate(), q2.conjugate(), q3.conjugate()
    return np.abs(
        np.array(
            [
                c1**8 - qb1 * qb2,
                c2**8 - q1 * qb3,
                c3**8 - q1**2 * qb2 * q3,
                q2 * qb3 - c1.conjugate() ** 4 * c2**4 * c3.conjugate() ** 4,
                q2 * q3 - c1.conjugate() ** 8 * c2.conjugate() ** 8,
            ]
        )
    )


@dataclass(frozen=True)
class DParams:
    """Phases of the diamond algebra.

    ``turns`` holds exact rational angles (fractions of a full turn) of the chi
    phases when known; classification needs them.
    """

    chi1: complex
    chi2: complex
    chi3: complex
    q1: complex
    q2: complex
    q3: complex
    turns: tuple[Fraction, Fraction, Fraction] | None = None
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ("chi1", "chi2", "chi3", "q1", "q2", "q3"):
            _check_unit(name, getattr(self, name))
        expected = q_from_chi(self.chi1, self.chi2, self.chi3)
        if max(abs(a - b) for a, b in zip(expected, self.q)) > 1e-12:
            raise ValueError("q phases inconsistent with chi phases")
        if self.turns is not None:
            for t, c in zip(self.turns, self.chi):
                if abs(unit(t) - c) > 1e-12:
                    raise ValueError("exact turns disagree with chi values")

    @property
    def chi(self) -> tuple[complex, complex, complex]:
        return (self.chi1, self.chi2, self.chi3)

    @property
    def q(self) -> tuple[complex, complex, complex]:
        return (self.q1, self.q2, self.q3)

    @classmethod
    def from_chi(cls, chi1: complex, chi2: complex, chi3: complex, **kw) -> "DParams":
        return cls(chi1, chi2, chi3, *q_from_chi(chi1, chi2, chi3), **kw)

    @classmethod
    def from_turns(cls, a1, a2, a3) -> "DParams":
        t = tuple(Fraction(a) % 1 for a in (a1, a2, a3))
        return cls.from_chi(*(unit(a) for a in t), turns=t)

    @property
    def q_turns(self) -> tuple[Fraction, Fraction, Fraction] | None:
        if self.turns is None:
            return None
        return q_turns_from_chi_turns(*self.turns)

    def eighth_power_residual(self) -> float:
        return float(eighth_power_residuals(self.chi, self.q).max())


def d_params_from_field(B: FieldB, convention: str = TORUS_UNITS) -> DParams:
    """chi phases of the diamond network from a constant field.

    The three angles are ``Theta(-e1, e2)``, ``Theta(-e1, e3)``, ``Theta(e2, e3)``.
    ``convention='torus'`` uses ``chi = exp(i pi Theta)``, for which ``chi**2`` is
    the torus commutator normalisation ``exp(2 pi i Theta)``; ``'radian'`` reads
    the angle as a plain phase, ``chi = exp(i Theta)``.
    """
    e1, e2, e3, _ = D_EDGES
    angles = (theta_of(B, -e1, e2), theta_of(B, -e1, e3), theta_of(B, e2, e3))
    if convention == TORUS_UNITS:
        chi = tuple(cmath.exp(1j * math.pi * a) for a in angles)
    elif convention == RADIAN_UNITS:
        chi = tuple(cmath.exp(1j * a) for a in angles)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    f2, f3, f4 = D_TETRA
    geometric = tuple(
        cmath.exp(1j * TWO_PI * theta_of(B, u, v)) for u, v in ((f2, f3), (f2, f4), (f3, f4))
    )
    diag = {"convention": convention, "angles": angles, "geometric_q": geometric}
    return DParams.from_chi(*chi, diagnostics=diag)


@dataclass(frozen=True)
class GParams:
    """Phases of the gyroid algebra; ``alpha_i = phi_i**4`` and ``Phi = phi1 phi2 phi3``."""

    phi1: complex
    phi2: complex
    phi3: complex
    turns: tuple[Fraction, Fraction, Fraction] | None = None

    def __post_init__(self):
        for name in ("phi1", "phi2", "phi3"):
            _check_unit(name, getattr(self, name))
        if self.turns is not None:
            for t, c in zip(self.turns, self.phi):
                if abs(unit(t) - c) > 1e-12:
                    raise ValueError("exact turns disagree with phi values")

    @property
    def phi(self) -> tuple[complex, complex, complex]:
        return (self.phi1, self.phi2, self.phi3)

    @property
    def Phi(self) -> complex:
        return self.phi1 * self.phi2 * self.phi3

    @property
    def alpha(self) -> tuple[complex, complex, complex]:
        return (self.phi1**4, self.phi2**4, self.phi3**4)

    @property
    def alpha1(self) -> complex:
        return self.phi1**4

    @property
    def alpha2(self) -> complex:
        return self.phi2**4

    @property
    def alpha3(self) -> complex:
        return self.phi3**4

    @classmethod
    def from_turns(cls, b1, b2, b3) -> "GParams":
        t = tuple(Fraction(b) % 1 for b in (b1, b2, b3))
        return cls(*(unit(b) for b in t), turns=t)

    @property
    def alpha_turns(self):
        if self.turns is None:
            return None
        return tuple((4 * b) % 1 for b in self.turns)


def g_thetas(B: FieldB) -> tuple[float, float, float]:
    """``(theta12, theta13, theta23)`` on the bcc generators."""
    g1, g2, g3 = G_BCC
    return theta_of(B, g1, g2), theta_of(B, g1, g3), theta_of(B, g2, g3)


def g_params_from_field(B: FieldB) -> GParams:
    t12, t13, t23 = g_thetas(B)
    half_pi = 0.5 * math.pi
    return GParams(
        cmath.exp(1j * half_pi * t12),
        cmath.exp(-1j * half_pi * t13),
        cmath.exp(1j * half_pi * t23),
    )


def integer_rank(rows: Iterable[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix (exact Gaussian elimination)."""
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def generates_lattice(lattice: LatticeSpec) -> bool:
    """True if the closed-cycle translations generate the full translation group."""
    coords = [lattice.lattice_coordinates(v) for v in lattice.cycle_vectors()]
    if any(c.denominator != 1 for row in coords for c in row):
        return False
    from itertools import combinations

    g = 0
    for rows in combinations(coords, 3):
        a = np.array([[int(c) for c in r] for r in rows], dtype=object)
        det = (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
        g = math.gcd(g, int(det))
    return g == 1
