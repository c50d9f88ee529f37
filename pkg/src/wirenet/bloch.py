"""Zero-field (Bloch) geometry: Harper matrices at characters of the 3-torus.

At vanishing field the torus algebra is commutative and a point of its
spectrum is a character ``(z1, z2, z3)`` of unit complex numbers.  Evaluating
the matrix Harper operator there gives a Hermitian ``k x k`` matrix whose
eigenvalues are the band energies; the characters where two or more of them
coincide form the ramification locus of the spectral cover.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import symbolic
from .geometry import LatticeSpec, builtin_lattice

TWO_PI = 2.0 * math.pi


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """Values ``z_i`` of the three torus generators."""

    z1: complex
    z2: complex
    z3: complex

    def __post_init__(self):
        for z in self.values:
            if not np.isfinite(z) or abs(abs(z) - 1.0) > 1e-12:
                raise CharacterError(f"character components must have modulus 1, got {z!r}")

    @property
    def values(self) -> tuple[complex, complex, complex]:
        return (complex(self.z1), complex(self.z2), complex(self.z3))

    @property
    def angles(self) -> tuple[float, float, float]:
        return tuple(float(np.angle(z) % TWO_PI) for z in self.values)

    @classmethod
    def from_angles(cls, phi1: float, phi2: float, phi3: float) -> "Character":
        return cls(*(complex(np.exp(1j * p)) for p in (phi1, phi2, phi3)))


@dataclass
class SpectrumPoint:
    character: Character
    eigenvalues: np.ndarray
    min_gap: float


def _lattice_name(lattice) -> str:
    return (lattice.name if isinstance(lattice, LatticeSpec) else str(lattice)).upper()


# ---------------------------------------------------------------------------
# evaluation


def _terms(lattice) -> tuple[int, list[tuple[int, int, list[tuple[complex, tuple[int, int, int]]]]]]:
    """Entries of the Harper matrix as lists of ``(coefficient, word)`` at unit phases."""
    if isinstance(lattice, LatticeSpec) and lattice.name.upper() not in ("P", "D", "G"):
        return _edge_terms(lattice)
    H = symbolic.harper_symbolic(_lattice_name(lattice))
    entries = []
    for i in range(H.k):
        for j in range(H.k):
            el = H[i, j]
            if not el:
                continue
            terms = [(el.coefficient(w).evaluate((1, 1, 1)), w) for w in el.terms]
            entries.append((i, j, terms))
    return H.k, entries


def _edge_terms(spec: LatticeSpec):
    """Bloch matrix straight from the quotient graph (used for custom lattices)."""
    k = spec.vertex_count
    acc: dict[tuple[int, int], dict] = {}
    for e, cyc in zip(spec.edges, spec.cycle_vectors()):
        n = spec.lattice_coordinates(cyc)
        if any(x.denominator != 1 for x in n):
            raise ValueError("edge does not close to a lattice translation")
        w = tuple(int(x) for x in n)
        wn = tuple(-x for x in w)
        acc.setdefault((e.head, e.tail), {}).setdefault(w, 0)
        acc[(e.head, e.tail)][w] += 1
        acc.setdefault((e.tail, e.head), {}).setdefault(wn, 0)
        acc[(e.tail, e.head)][wn] += 1
    entries = [(i, j, [(complex(c), w) for w, c in sorted(d.items()) if c]) for (i, j), d in sorted(acc.items())]
    return k, entries


def edge_bloch_matrix(spec: LatticeSpec, c: Character) -> np.ndarray:
    """Sum over edges ``t -> h`` of ``z^n`` into entry ``(h, t)`` plus the adjoint."""
    k, entries = _edge_terms(spec)
    return _evaluate_batch(k, entries, np.array([c.values]))[0]


def _evaluate_batch(k, entries, z: np.ndarray) -> np.ndarray:
    """Harper matrices at many characters; ``z`` has shape ``(n, 3)``."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros((z.shape[0], k, k), dtype=complex)
    for i, j, terms in entries:
        for coef, w in terms:
            val = np.full(z.shape[0], coef, dtype=complex)
            for axis, e in enumerate(w):
                if e:
                    val = val * z[:, axis] ** e
            out[:, i, j] += val
    return out


def evaluate_at_character(lattice, c: Character) -> np.ndarray:
    """Numeric Hermitian Harper matrix at the character ``c``."""
    if not isinstance(c, Character):
        c = Character(*c)
    k, entries = _terms(lattice)
    return _evaluate_batch(k, entries, np.array([c.values]))[0]


def evaluate_at_angles(lattice, phis: np.ndarray) -> np.ndarray:
    """Batched evaluation at angle triples of shape ``(n, 3)``."""
    k, entries = _terms(lattice)
    return _evaluate_batch(k, entries, np.exp(1j * np.asarray(phis, dtype=float)))


def _min_gaps(ev: np.ndarray) -> np.ndarray:
    if ev.shape[-1] < 2:
        return np.full(ev.shape[:-1], np.inf)
    return np.diff(ev, axis=-1).min(axis=-1)


def spectrum_at(lattice, c: Character, check: bool = True) -> SpectrumPoint:
    """Sorted eigenvalues at ``c``; for D also cross-checked against ``+-|1+z1+z2+z3|``."""
    if not isinstance(c, Character):
        c = Character(*c)
    M = evaluate_at_character(lattice, c)
    try:
        ev = np.linalg.eigvalsh(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ArithmeticError(f"eigensolver failed at {c}") from exc
    if check and _lattice_name(lattice) == "D":
        r = abs(1 + sum(c.values))
        if abs(ev[1] - r) > 1e-10 or abs(ev[0] + r) > 1e-10:
            raise ArithmeticError("D spectrum disagrees with the closed form")
    gap = float(_min_gaps(ev)) if ev.size > 1 else math.inf
    return SpectrumPoint(c, ev, gap)


def d_closed_form(c: Character) -> np.ndarray:
    r = abs(1 + sum(c.values))
    return np.array([-r, r])


def bands_along(lattice, path: np.ndarray) -> np.ndarray:
    """Eigenvalues along an ``(n, 3)`` array of angles."""
    return np.linalg.eigvalsh(evaluate_at_angles(lattice, path))


# ---------------------------------------------------------------------------
# locus of the D cover


def _wrap(x):
    return (np.asarray(x) + np.pi) % TWO_PI - np.pi


def d_locus_distance(c) -> float:
    """Flat periodic distance from ``c`` to the three circles where ``1+z1+z2+z3=0``.

    Circle ``i`` is ``phi_i = pi`` with ``phi_k = phi_j + pi`` for the other two
    angles; the distance to the line ``phi_k - phi_j = pi`` inside the
    ``(phi_j, phi_k)`` torus is ``|wrap(phi_k - phi_j - pi)| / sqrt 2``.
    """
    phi = np.array(c.angles if isinstance(c, Character) else c, dtype=float)
    best = math.inf
    for i, (j, k) in ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))):
        a = _wrap(phi[i] - np.pi)
        b = _wrap(phi[k] - phi[j] - np.pi) / math.sqrt(2)
        best = min(best, math.hypot(float(a), float(b)))
    return best


def d_locus_circles(n: int = 256) -> list[np.ndarray]:
    """``n`` sample angles on each of the three D ramification circles."""
    t = TWO_PI * np.arange(n) / n
    pi = np.full(n, np.pi)
    return [
        np.stack([pi, t, t + np.pi], axis=1) % TWO_PI,
        np.stack([t, pi, t + np.pi], axis=1) % TWO_PI,
        np.stack([t, t + np.pi, pi], axis=1) % TWO_PI,
    ]


def periodic_distance(a, b) -> np.ndarray:
    d = _wrap(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    return np.sqrt((d * d).sum(axis=-1))


# ---------------------------------------------------------------------------
# degeneracy scan


def multiplicity_pattern(ev: Sequence[float], tol: float) -> tuple[int, ...]:
    """Sizes (> 1) of groups of eigenvalues whose neighbours lie within ``tol``."""
    groups = []
    run = 1
    for a, b in zip(ev[:-1], ev[1:]):
        if b - a < tol:
            run += 1
        else:
            if run > 1:
                groups.append(run)
            run = 1
    if run > 1:
        groups.append(run)
    return tuple(sorted(groups, reverse=True))


@dataclass
class LocusPoint:
    index: tuple[int, int, int]
    phi: tuple[float, float, float]
    eigenvalues: np.ndarray
    min_gap: float
    pattern: tuple[int, ...]


@dataclass
class Cluster:
    phi: tuple[float, float, float]
    eigenvalues: np.ndarray
    gap: float
    pattern: tuple[int, ...]
    members: int = 1


@dataclass
class LocusReport:
    lattice: str
    grid: int
    tol: float
    points: list[LocusPoint] = field(default_factory=list)
    clusters: list[Cluster] = field(default_factory=list)
    refined: bool = False

    @property
    def spacing(self) -> float:
        return TWO_PI / self.grid

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        k = len(self.points[0].eigenvalues) if self.points else 0
        w.writerow(["phi1", "phi2", "phi3"] + [f"e{i + 1}" for i in range(k)] + ["min_gap"])
        for p in self.points:
            w.writerow([f"{x:.12f}" for x in p.phi] + [f"{x:.12f}" for x in p.eigenvalues] + [f"{p.min_gap:.6e}"])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice,
            "grid": self.grid,
            "tol": self.tol,
            "flagged": len(self.points),
            "points": [
                {
                    "index": list(p.index),
                    "phi": [round(x, 12) for x in p.phi],
                    "eigenvalues": [round(float(x), 12) for x in p.eigenvalues],
                    "min_gap": float(f"{p.min_gap:.6e}"),
                    "pattern": list(p.pattern),
                }
                for p in self.points
            ],
            "refined": self.refined,
            "clusters": [
                {
                    "phi": [round(x, 9) for x in c.phi],
                    "eigenvalues": [round(float(x), 9) for x in c.eigenvalues],
                    "gap": float(f"{c.gap:.3e}"),
                    "pattern": list(c.pattern),
                    "members": c.members,
                }
                for c in self.clusters
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def _grid_angles(gridN: int) -> np.ndarray:
    ax = TWO_PI * np.arange(gridN) / gridN
    g = np.meshgrid(ax, ax, ax, indexing="ij")
    return np.stack([x.ravel() for x in g], axis=1)


def grid_spectra(lattice, gridN: int, chunk: int = 65536) -> np.ndarray:
    """Eigenvalues on the ``gridN^3`` grid, shape ``(gridN, gridN, gridN, k)`` in index order."""
    phis = _grid_angles(gridN)
    parts = [bands_along(lattice, phis[s : s + chunk]) for s in range(0, len(phis), chunk)]
    ev = np.concatenate(parts, axis=0)
    return ev.reshape(gridN, gridN, gridN, -1)


def degeneracy_scan(lattice, gridN: int, tol: float, refine: bool = False, **refine_kw) -> LocusReport:
    """Flag every grid character whose smallest adjacent eigenvalue gap is below ``tol``.

    With ``refine=True`` the local minima of the gap on the grid are also
    polished by a damped Newton iteration and merged into clusters; see
    :func:`refine_clusters`.
    """
    if gridN < 8:
        raise ValueError("grid must have at least 8 points per axis")
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    name = _lattice_name(lattice)
    ev = grid_spectra(lattice, gridN)
    gaps = _min_gaps(ev)
    report = LocusReport(name, gridN, tol)
    h = TWO_PI / gridN
    for idx in zip(*np.nonzero(gaps < tol)):
        e = ev[idx]
        report.points.append(
            LocusPoint(
                tuple(int(i) for i in idx),
                tuple(float(i) * h for i in idx),
                e,
                float(gaps[idx]),
                multiplicity_pattern(e, tol),
            )
        )
    if refine:
        report.clusters = refine_clusters(lattice, ev, gridN, **refine_kw)
        report.refined = True
    return report


def _gap_fn(lattice, order: int = 1):
    """Sum of the ``order`` smallest adjacent gaps, squared (smooth at conical points)."""
    k, entries = _terms(lattice)

    def f(phi):
        z = np.exp(1j * np.atleast_2d(phi))
        ev = np.linalg.eigvalsh(_evaluate_batch(k, entries, z))
        g = np.sort(np.diff(ev, axis=-1), axis=-1)[:, :order]
        return (g * g).sum(axis=-1)

    return f


def newton_refine(f, x0: np.ndarray, h: float = 1e-4, steps: int = 40, xtol: float = 1e-10):
    """Damped Newton minimisation of ``f`` with central finite-difference derivatives."""
    x = np.array(x0, dtype=float)
    fx = float(f(x)[0])
    E = np.eye(3) * h
    for _ in range(steps):
        # all stencil points in one batch
        pts = [x]
        for i in range(3):
            pts += [x + E[i], x - E[i]]
        for i in range(3):
            for j in range(i + 1, 3):
                pts += [x + E[i] + E[j], x + E[i] - E[j], x - E[i] + E[j], x - E[i] - E[j]]
        v = f(np.array(pts))
        g = np.array([(v[1 + 2 * i] - v[2 + 2 * i]) / (2 * h) for i in range(3)])
        Hs = np.zeros((3, 3))
        for i in range(3):
            Hs[i, i] = (v[1 + 2 * i] - 2 * v[0] + v[2 + 2 * i]) / (h * h)
        o = 7
        for i in range(3):
            for j in range(i + 1, 3):
                Hs[i, j] = Hs[j, i] = (v[o] - v[o + 1] - v[o + 2] + v[o + 3]) / (4 * h * h)
                o += 4
        w, V = np.linalg.eigh(Hs)
        w = np.maximum(np.abs(w), 1e-8)
        step = -V @ ((V.T @ g) / w)
        t = 1.0
        while t > 1e-6:
            xn = x + t * step
            fn = float(f(xn)[0])
            if fn < fx:
                break
            t *= 0.5
        else:
            break
        moved = np.linalg.norm(xn - x)
        x, fx = xn, fn
        if moved < xtol or fx < 1e-26:
            break
    return x % TWO_PI, fx


def _local_minima(gaps: np.ndarray) -> np.ndarray:
    """Indices of periodic local minima (26-neighbourhood, ties allowed)."""
    m = np.ones(gaps.shape, dtype=bool)
    for s in np.ndindex(3, 3, 3):
        if s == (1, 1, 1):
            continue
        m &= gaps <= np.roll(gaps, tuple(x - 1 for x in s), axis=(0, 1, 2))
    return np.argwhere(m)


def refine_clusters(
    lattice,
    ev: np.ndarray,
    gridN: int,
    candidate_gap: float | None = None,
    degenerate_tol: float = 1e-6,
    merge_radius: float = 1.5,
) -> list[Cluster]:
    """Polish grid-local minima of the gap and merge them into degeneracy clusters.

    Candidates are grid-local minima of the smallest gap below
    ``candidate_gap`` (default: twice the largest gap change one grid step can
    produce).  Each is refined twice, once on the smallest gap and once on the
    sum of the two smallest, so triple points are not mistaken for their
    neighbouring double points.  Refined points closing a gap below
    ``degenerate_tol`` are merged when they lie within ``merge_radius`` grid
    spacings of each other.
    """
    h = TWO_PI / gridN
    gaps = _min_gaps(ev)
    if candidate_gap is None:
        scale = float(np.abs(ev).max())
        candidate_gap = 2.0 * scale * h
    idx = [tuple(i) for i in _local_minima(gaps) if gaps[tuple(i)] < candidate_gap]
    f1 = _gap_fn(lattice, 1)
    f2 = _gap_fn(lattice, 2) if ev.shape[-1] > 2 else None
    found: list[Cluster] = []
    for i in idx:
        x0 = np.array(i, dtype=float) * h
        for f in (f1, f2):
            if f is None:
                continue
            x, fx = newton_refine(f, x0)
            e = np.linalg.eigvalsh(evaluate_at_angles(lattice, x[None, :]))[0]
            g = float(_min_gaps(e))
            if g > degenerate_tol:
                continue
            pat = multiplicity_pattern(e, degenerate_tol)
            for c in found:
                if periodic_distance(c.phi, x) < merge_radius * h:
                    c.members += 1
                    # keep the most degenerate representative
                    if sum(pat) > sum(c.pattern) or (sum(pat) == sum(c.pattern) and g < c.gap):
                        c.phi, c.eigenvalues, c.gap, c.pattern = tuple(float(t) for t in x), e, g, pat
                    break
            else:
                found.append(Cluster(tuple(float(t) for t in x), e, g, pat))
    found.sort(key=lambda c: c.phi)
    return found
