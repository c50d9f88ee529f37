"""Finite-dimensional representations of rational noncommutative 3-tori.

Clock and shift matrices supply the building blocks; unit scalars (twists)
multiplying the generators sweep the characters of the centre so that the
union of finite-dimensional spectra covers the spectrum of the torus algebra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import symbolic
from .geometry import DParams, GParams, LatticeSpec, unit

GENERAL = "general"
AXIS_ALIGNED = "axis"
REDUCED = "reduced"

DEFAULT_GENERAL_CAP = 16


def clock(N: int) -> np.ndarray:
    """``diag(1, w, ..., w^(N-1))`` with ``w = exp(2 pi i / N)``."""
    if N < 1:
        raise ValueError("clock dimension must be positive")
    return np.diag(np.exp(2j * np.pi * np.arange(N) / N))


def shift(N: int) -> np.ndarray:
    """Cyclic shift ``S e_j = e_(j-1)``; satisfies ``S C = w C S``."""
    if N < 1:
        raise ValueError("shift dimension must be positive")
    return np.roll(np.eye(N, dtype=complex), -1, axis=0)


@dataclass(frozen=True)
class RationalSkew:
    """``theta_ij = p_ij / N`` for the pairs (1,2), (1,3), (2,3)."""

    p12: int
    p13: int
    p23: int
    N: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("denominator must be positive")

    @classmethod
    def from_turns(cls, t12, t13, t23) -> "RationalSkew":
        fr = [Fraction(t) % 1 for t in (t12, t13, t23)]
        N = math.lcm(*(f.denominator for f in fr))
        return cls(*(int(f * N) for f in fr), N)

    @property
    def thetas(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(Fraction(p, self.N) for p in (self.p12, self.p13, self.p23))

    @property
    def gcd(self) -> int:
        return math.gcd(self.p12, self.p13, self.p23, self.N)

    def reduced(self) -> "RationalSkew":
        g = self.gcd
        return RationalSkew(self.p12 // g, self.p13 // g, self.p23 // g, self.N // g)

    def phases(self) -> tuple[complex, complex, complex]:
        return tuple(unit(t) for t in self.thetas)

    def matrix(self) -> np.ndarray:
        """Integer skew matrix of numerators."""
        a, b, c = self.p12, self.p13, self.p23
        return np.array([[0, a, b], [-a, 0, c], [-b, -c, 0]], dtype=np.int64)


@dataclass(frozen=True)
class Twist:
    lambda1: complex = 1.0
    lambda2: complex = 1.0
    lambda3: complex = 1.0

    def __post_init__(self):
        for lam in self.values:
            if abs(abs(lam) - 1) > 1e-12:
                raise ValueError("twists must lie on the unit circle")

    @property
    def values(self) -> tuple[complex, complex, complex]:
        return (complex(self.lambda1), complex(self.lambda2), complex(self.lambda3))

    @classmethod
    def from_turns(cls, *t) -> "Twist":
        return cls(*(unit(x) for x in t))


@dataclass(frozen=True, eq=False)
class TorusRep:
    mats: tuple[np.ndarray, np.ndarray, np.ndarray]
    skew: RationalSkew
    twist: Twist = field(default_factory=Twist)
    mode: str = GENERAL

    @property
    def dimension(self) -> int:
        return self.mats[0].shape[0]

    def commutation_residual(self) -> float:
        U = self.mats
        q = self.skew.phases()
        pairs = ((0, 1, q[0]), (0, 2, q[1]), (1, 2, q[2]))
        return max(float(np.abs(U[i] @ U[j] - c * U[j] @ U[i]).max()) for i, j, c in pairs)

    def unitarity_residual(self) -> float:
        eye = np.eye(self.dimension)
        return max(float(np.abs(M @ M.conj().T - eye).max()) for M in self.mats)

    def verify(self, tol: float = 1e-12) -> None:
        c, u = self.commutation_residual(), self.unitarity_residual()
        if c > tol or u > tol:
            raise AssertionError(f"invalid torus representation: commutation {c:.2e}, unitarity {u:.2e}")


def _kron(*ms):
    out = np.ones((1, 1), dtype=complex)
    for m in ms:
        out = np.kron(out, m)
    return out


def _cpow(N, p):
    return np.diag(np.exp(2j * np.pi * (p % N) * np.arange(N) / N))


def _complete_unimodular(v: Sequence[int]) -> np.ndarray:
    """Integer matrix of determinant +-1 whose last row is the primitive vector ``v``."""
    v = [int(x) for x in v]
    if math.gcd(*v) != 1:
        raise ValueError("vector is not primitive")
    # row-reduce v (as a column) to e3, recording the operations in R
    R = np.eye(3, dtype=object)
    col = list(v)
    while sum(1 for x in col if x != 0) > 1 or col[2] == 0:
        nz = [i for i in range(3) if col[i] != 0]
        if len(nz) == 1:
            i = nz[0]
            col[i], col[2] = col[2], col[i]
            R[[i, 2]] = R[[2, i]]
            continue
        i = min(nz, key=lambda t: abs(col[t]))
        for j in nz:
            if j != i:
                f = col[j] // col[i]
                col[j] -= f * col[i]
                R[j] = R[j] - f * R[i]
    if col[2] == -1:
        R[2] = -R[2]
    # R v = e3, so v is the last column of R^-1 and the last row of (R^-1)^T
    Rinv = _int_inverse(R)
    return np.array(Rinv.T, dtype=np.int64)


def _int_inverse(R) -> np.ndarray:
    m = np.array([[Fraction(int(x)) for x in row] for row in R], dtype=object)
    n = 3
    aug = np.concatenate([m, np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)], axis=1)
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[[c, piv]] = aug[[piv, c]]
        aug[c] = aug[c] / aug[c][c]
        for r in range(n):
            if r != c:
                aug[r] = aug[r] - aug[r][c] * aug[c]
    inv = aug[:, n:]
    if any(x.denominator != 1 for x in inv.flat):
        raise ValueError("matrix is not unimodular")
    return np.array([[int(x) for x in row] for row in inv], dtype=object)


def _reduced_mats(skew: RationalSkew):
    """Irreducible-dimension generators via an integral change of torus basis."""
    P = skew.matrix()
    N = skew.N
    if not (P % N).any():
        return [np.ones((1, 1), dtype=complex) for _ in range(3)]
    kern = np.array([P[1, 2], -P[0, 2], P[0, 1]], dtype=np.int64)
    g = math.gcd(*(int(x) for x in kern))
    kern //= g
    M = _complete_unimodular(kern)
    Pn = M @ P @ M.T
    gp = int(Pn[0, 1])
    m = N // math.gcd(gp, N)
    # new generators Y1 = C^(-gp), Y2 = S (dimension m, gp/N has denominator m), Y3 central
    Y = [_cpow(m, -gp * m // N), shift(m), np.eye(m, dtype=complex)]
    Minv = _int_inverse(M)
    mats = []
    for row in Minv:
        X = np.eye(m, dtype=complex)
        for Yi, e in zip(Y, row):
            e = int(e)
            X = X @ np.linalg.matrix_power(Yi if e >= 0 else Yi.conj().T, abs(e))
        mats.append(X)
    return mats


def torus_rep(
    skew: RationalSkew,
    twist: Twist | None = None,
    mode: str = GENERAL,
    cap: int = DEFAULT_GENERAL_CAP,
    tol: float = 1e-12,
) -> TorusRep:
    """Finite representation of the rational 3-torus with commutation phases ``exp(2 pi i p_ij / N)``.

    ``general`` builds the ``N^3``-dimensional tensor model, ``axis`` the
    ``N``-dimensional one for skews with only ``p12`` nonzero, and ``reduced``
    an irreducible-dimension model after an integral change of basis.
    """
    twist = twist or Twist()
    N = skew.N
    if mode == GENERAL:
        if N > cap:
            raise ValueError(f"general mode capped at N <= {cap}, got {N}")
        C, S, I = clock(N), shift(N), np.eye(N, dtype=complex)
        base = [
            _kron(_cpow(N, -skew.p12), _cpow(N, -skew.p13), I),
            _kron(S, I, _cpow(N, -skew.p23)),
            _kron(I, S, S),
        ]
    elif mode == AXIS_ALIGNED:
        if skew.p13 % N or skew.p23 % N:
            raise ValueError("axis-aligned mode needs p13 = p23 = 0")
        base = [_cpow(N, -skew.p12), shift(N), np.eye(N, dtype=complex)]
    elif mode == REDUCED:
        base = _reduced_mats(skew)
    else:
        raise ValueError(f"unknown representation mode {mode!r}")
    mats = tuple(lam * M for lam, M in zip(twist.values, base))
    rep = TorusRep(mats, skew, twist, mode)
    rep.verify(tol)
    return rep


def axis_rep(p: int, N: int, axis: str = "12", twist: Twist | None = None) -> TorusRep:
    """``N``-dimensional representation with flux ``p/N`` between the two generators of ``axis``."""
    twist = twist or Twist()
    i, j = int(axis[0]) - 1, int(axis[1]) - 1
    if (i, j) not in ((0, 1), (0, 2), (1, 2)):
        raise ValueError(f"axis must be one of 12, 13, 23, got {axis!r}")
    base = [np.eye(N, dtype=complex) for _ in range(3)]
    base[i] = _cpow(N, -p)
    base[j] = shift(N)
    p_ij = {(0, 1): (p, 0, 0), (0, 2): (0, p, 0), (1, 2): (0, 0, p)}[(i, j)]
    skew = RationalSkew(*p_ij, N)
    mats = tuple(lam * M for lam, M in zip(twist.values, base))
    rep = TorusRep(mats, skew, twist, AXIS_ALIGNED)
    rep.verify()
    return rep


# ---------------------------------------------------------------------------
# represented Harper operators


def skew_for_params(lattice, params) -> RationalSkew:
    """Rational skew matching the commutation phases of ``params`` (exact turns required)."""
    rel = symbolic.relations_for(lattice)
    if rel.name == "D":
        if params.turns is None:
            raise ValueError("exact turns required")
        return RationalSkew.from_turns(*params.q_turns)
    if rel.name == "G":
        if params.turns is None:
            raise ValueError("exact turns required")
        a1, a2, a3 = params.alpha_turns
        return RationalSkew.from_turns(a1, -a2, a3)
    raise ValueError("P has no phase parameters; build the skew directly")


def _phases(rel, params, rep):
    if rel.name == "P":
        return rep.skew.phases()
    if rel.name == "D":
        if not isinstance(params, DParams):
            raise TypeError("D lattice needs DParams")
        return params.chi
    if not isinstance(params, GParams):
        raise TypeError("G lattice needs GParams")
    return params.phi


def check_consistency(lattice, rep: TorusRep, params, tol: float = 1e-10) -> None:
    rel = symbolic.relations_for(lattice)
    phases = _phases(rel, params, rep)
    expected = [symbolic.PhasePoly.monomial(e).evaluate(phases) for e in rel.commutator_exponents()]
    got = rep.skew.phases()
    err = max(abs(a - b) for a, b in zip(expected, got))
    if err > tol:
        raise ValueError(f"phase parameters inconsistent with representation skew (error {err:.2e})")


def rho_rep(lattice, rep: TorusRep, params=None) -> list[np.ndarray]:
    """Represented diagonal embeddings of the three torus generators."""
    rel = symbolic.relations_for(lattice)
    check_consistency(rel.name, rep, params)
    phases = _phases(rel, params, rep)
    out = []
    for g in symbolic.TorusElement.generators(rel):
        out.append(symbolic.rho_embed(g, rel.name).evaluate(phases, rep.mats))
    return out


def harper_rep(lattice, rep: TorusRep, params=None) -> np.ndarray:
    """Substitute a torus representation into the matrix Harper operator."""
    name = lattice.name if isinstance(lattice, LatticeSpec) else lattice
    rel = symbolic.relations_for(name)
    check_consistency(rel.name, rep, params)
    H = symbolic.harper_symbolic(rel.name).evaluate(_phases(rel, params, rep), rep.mats)
    if np.abs(H - H.conj().T).max() > 1e-10:
        raise AssertionError("represented Harper operator is not Hermitian")
    return H


# ---------------------------------------------------------------------------
# butterfly sweeps


def twist_grid(M: int, n: int = 3) -> list[Twist]:
    """Uniform grid of twists, ``M`` angles per generator (offset by half a step)."""
    ang = (np.arange(M) + 0.5) / M
    grids = np.meshgrid(*([ang] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    out = []
    for row in pts:
        vals = list(np.exp(2j * np.pi * row)) + [1.0] * (3 - n)
        out.append(Twist(*vals))
    return out


def merge_intervals(intervals, tol: float = 1e-9) -> list[tuple[float, float]]:
    out: list[list[float]] = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1] + tol:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [tuple(x) for x in out]


def butterfly(
    lattice,
    axis: str = "12",
    denominators: Sequence[int] = (1, 2, 3, 4, 5),
    twist_grid_m: int = 8,
    params=None,
    cap: int = 64,
) -> dict:
    """Spectra at rational flux ``p/N`` along one axis, unioned over a twist grid.

    Returns ``{"fluxes": [...]}`` where each entry holds the flux, the
    eigenvalues per twist (ordered by twist index) and the merged band
    intervals with their gap count.  Only the P network is swept here; its
    torus generators are the lattice translations themselves.
    """
    name = lattice.name if isinstance(lattice, LatticeSpec) else lattice
    if name.upper() != "P":
        raise ValueError("butterfly sweeps are defined for the P network")
    if any(N > cap for N in denominators):
        raise ValueError(f"denominator cap {cap} exceeded")
    grid = twist_grid(twist_grid_m)
    fluxes = []
    for N in denominators:
        for p in range(N):
            if math.gcd(p, N) != 1:
                continue
            spectra = []
            for tw in grid:
                rep = axis_rep(p, N, axis, tw)
                spectra.append(np.linalg.eigvalsh(harper_rep("P", rep)))
            spectra = np.array(spectra)
            bands = [(float(spectra[:, j].min()), float(spectra[:, j].max())) for j in range(spectra.shape[1])]
            merged = merge_intervals(bands)
            fluxes.append(
                {
                    "p": p,
                    "N": N,
                    "eigenvalues": spectra,
                    "bands": merged,
                    "gaps": [(merged[i][1], merged[i + 1][0]) for i in range(len(merged) - 1)],
                }
            )
    return {"lattice": "P", "axis": axis, "twist_grid": twist_grid_m, "fluxes": fluxes}
