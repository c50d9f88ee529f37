"""Exact noncommutative torus algebra with phase-polynomial coefficients.

Elements are finite sums of normal-ordered words ``U^a V^b W^c`` whose
coefficients are integer Laurent polynomials in three unit phase symbols.
The commutation phases of the torus are monomials in those symbols, so every
identity reduces to comparing dictionaries.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

Exp = tuple[int, int, int]

ZERO3: Exp = (0, 0, 0)


def _add(a: Exp, b: Exp) -> Exp:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _scale(n: int, a: Exp) -> Exp:
    return (n * a[0], n * a[1], n * a[2])


def _neg(a: Exp) -> Exp:
    return (-a[0], -a[1], -a[2])


class PhasePoly:
    """Integer Laurent polynomial in three phase symbols.

    Stored as ``{exponent triple: integer coefficient}`` with zero terms dropped.
    Because the symbols stand for unit complex numbers, conjugation negates
    exponents.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, int] | int | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, (int, np.integer)):
            terms = {ZERO3: int(terms)} if terms else {}
        self.terms: dict[Exp, int] = {tuple(k): int(v) for k, v in terms.items() if v}

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "PhasePoly":
        return cls({tuple(int(e) for e in exps): coeff})

    @classmethod
    def one(cls) -> "PhasePoly":
        return cls({ZERO3: 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = PhasePoly(other)
        return isinstance(other, PhasePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "PhasePoly":
        other = _as_poly(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return PhasePoly(out)

    __radd__ = __add__

    def __neg__(self) -> "PhasePoly":
        return PhasePoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "PhasePoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "PhasePoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "PhasePoly":
        other = _as_poly(other)
        out: dict[Exp, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _add(k1, k2)
                out[k] = out.get(k, 0) + v1 * v2
        return PhasePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PhasePoly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (k, v), = self.terms.items()
            if abs(v) != 1:
                raise ValueError("only unit monomials have inverses")
            return PhasePoly({_scale(n, k): v ** abs(n)})
        out = PhasePoly.one()
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "PhasePoly":
        return PhasePoly({_neg(k): v for k, v in self.terms.items()})

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def evaluate(self, phases: Sequence[complex]) -> complex:
        z = [complex(p) for p in phases]
        total = 0j
        for (a, b, c), v in self.terms.items():
            total += v * z[0] ** a * z[1] ** b * z[2] ** c
        return total

    def evaluate_turns(self, turns) -> complex:
        """Evaluate at ``exp(2 pi i t)`` for rational turns ``t`` with exact exponent reduction."""
        from fractions import Fraction

        total = 0j
        for (a, b, c), v in self.terms.items():
            ang = (a * Fraction(turns[0]) + b * Fraction(turns[1]) + c * Fraction(turns[2])) % 1
            total += v * np.exp(2j * np.pi * float(ang))
        return total

    def to_json(self) -> list:
        return [[list(k), v] for k, v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "PhasePoly":
        return cls({tuple(k): v for k, v in data})

    def format(self, names: Sequence[str] = ("x1", "x2", "x3")) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            mono = "*".join(
                f"{n}^{e}" if e != 1 else n for n, e in zip(names, k) if e != 0
            )
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PhasePoly({self.format()})"


def _as_poly(x) -> PhasePoly:
    if isinstance(x, PhasePoly):
        return x
    if isinstance(x, (int, np.integer)):
        return PhasePoly(int(x))
    raise TypeError(f"cannot use {type(x).__name__} as a phase polynomial")


def mono(a: int = 0, b: int = 0, c: int = 0) -> PhasePoly:
    return PhasePoly.monomial((a, b, c))


@dataclass(frozen=True)
class TorusRelations:
    """Commutation data ``X_i X_j = c_ij X_j X_i`` with each ``c_ij`` a phase monomial.

    ``twists`` gives, per quotient-graph vertex, the phase monomial multiplying
    each generator in the diagonal embedding of the torus (vertex 0 is the
    root and carries no twist).
    """

    name: str
    generators: tuple[str, str, str]
    symbols: tuple[str, str, str]
    c12: Exp
    c13: Exp
    c23: Exp
    twists: tuple[tuple[Exp, Exp, Exp], ...]

    @property
    def k(self) -> int:
        return len(self.twists)

    def commutator_exponents(self) -> tuple[Exp, Exp, Exp]:
        return (self.c12, self.c13, self.c23)


# q1 = chi1^-2 chi2^2 chi3^2, q2 = chi1^-6 chi2^-2 chi3^-2, q3 = chi1^-2 chi2^-6 chi3^2
Q1: Exp = (-2, 2, 2)
Q2: Exp = (-6, -2, -2)
Q3: Exp = (-2, -6, 2)

D_RELATIONS = TorusRelations(
    name="D",
    generators=("U", "V", "W"),
    symbols=("chi1", "chi2", "chi3"),
    c12=Q1,
    c13=Q2,
    c23=Q3,
    twists=(
        (ZERO3, ZERO3, ZERO3),
        ((2, 0, 0), (0, 2, 0), (-2, -2, 0)),
    ),
)

# AB = alpha1 BA, AC = conj(alpha2) CA, BC = alpha3 CB with alpha_i = phi_i^4.
# Vertex twists are exp(2 pi i Theta(g, t_v)) for tree paths t_B = e1, t_C = e2, t_D = e3.
G_RELATIONS = TorusRelations(
    name="G",
    generators=("A", "B", "C"),
    symbols=("phi1", "phi2", "phi3"),
    c12=(4, 0, 0),
    c13=(0, -4, 0),
    c23=(0, 0, 4),
    twists=(
        (ZERO3, ZERO3, ZERO3),
        ((1, 0, 0), (1, 0, 0), (0, -1, -1)),
        ((0, 1, 0), (-1, 0, -1), (0, 1, 0)),
        ((-1, -1, 0), (0, 0, 1), (0, 0, 1)),
    ),
)

# The cubic network has a single vertex; its phases are the torus commutators directly.
P_RELATIONS = TorusRelations(
    name="P",
    generators=("U1", "U2", "U3"),
    symbols=("q12", "q13", "q23"),
    c12=(1, 0, 0),
    c13=(0, 1, 0),
    c23=(0, 0, 1),
    twists=((ZERO3, ZERO3, ZERO3),),
)

RELATIONS = {"P": P_RELATIONS, "D": D_RELATIONS, "G": G_RELATIONS}


def relations_for(lattice) -> TorusRelations:
    name = lattice if isinstance(lattice, str) else lattice.name
    try:
        return RELATIONS[name.upper()]
    except KeyError:
        raise ValueError(f"no torus presentation known for lattice {name!r}") from None


def word_product_phase(rel: TorusRelations, w1: Exp, w2: Exp) -> Exp:
    """Exponent of the phase monomial produced by normal-ordering ``w1 * w2``.

    ``U^a V^b W^c U^d V^e W^f``: move ``U^d`` left past ``W^c`` and ``V^b``,
    then ``V^e`` past ``W^c``.  ``X^m Y^n = c^(m n) Y^n X^m`` for ``XY = cYX``.
    """
    a, b, c = w1
    d, e, _ = w2
    out = _scale(-c * d, rel.c13)
    out = _add(out, _scale(-b * d, rel.c12))
    out = _add(out, _scale(-c * e, rel.c23))
    return out


class TorusElement:
    """Finite sum of normal-ordered words with :class:`PhasePoly` coefficients."""

    __slots__ = ("rel", "terms")

    def __init__(self, rel: TorusRelations, terms: Mapping[Exp, PhasePoly] | None = None):
        self.rel = rel
        self.terms: dict[Exp, PhasePoly] = {}
        for k, v in (terms or {}).items():
            v = _as_poly(v)
            if v:
                self.terms[tuple(k)] = v

    # constructors
    @classmethod
    def zero(cls, rel) -> "TorusElement":
        return cls(rel)

    @classmethod
    def scalar(cls, rel, c) -> "TorusElement":
        return cls(rel, {ZERO3: _as_poly(c)})

    @classmethod
    def word(cls, rel, a=0, b=0, c=0, coeff=1) -> "TorusElement":
        return cls(rel, {(a, b, c): _as_poly(coeff)})

    @classmethod
    def generators(cls, rel) -> tuple["TorusElement", "TorusElement", "TorusElement"]:
        return tuple(cls.word(rel, *e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def _check(self, other: "TorusElement"):
        if other.rel is not self.rel and other.rel != self.rel:
            raise ValueError("elements belong to different torus algebras")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusElement) and self.rel == other.rel and self.terms == other.terms

    def __hash__(self):
        return hash((self.rel.name, frozenset(self.terms.items())))

    def __add__(self, other) -> "TorusElement":
        other = _as_elem(self.rel, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return TorusElement(self.rel, out)

    __radd__ = __add__

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.rel, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "TorusElement":
        return self + (-_as_elem(self.rel, other))

    def __rsub__(self, other) -> "TorusElement":
        return _as_elem(self.rel, other) - self

    def __mul__(self, other) -> "TorusElement":
        if isinstance(other, (PhasePoly, int, np.integer)):
            c = _as_poly(other)
            return TorusElement(self.rel, {k: v * c for k, v in self.terms.items()})
        return normal_product(self, other)

    def __rmul__(self, other) -> "TorusElement":
        if isinstance(other, (PhasePoly, int, np.integer)):
            return self * other
        return NotImplemented

    def adjoint(self) -> "TorusElement":
        return adjoint(self)

    @property
    def H(self) -> "TorusElement":
        return adjoint(self)

    def coefficient(self, word: Exp) -> PhasePoly:
        return self.terms.get(tuple(word), PhasePoly())

    def substitute(self, phases: Sequence[complex]) -> dict[Exp, complex]:
        return {k: v.evaluate(phases) for k, v in self.terms.items()}

    def evaluate(self, phases: Sequence[complex], mats: Sequence[np.ndarray]) -> np.ndarray:
        """Numeric value given phase values and matrices for the three generators."""
        X, Y, Z = (np.asarray(m, dtype=complex) for m in mats)
        d = X.shape[0]
        out = np.zeros((d, d), dtype=complex)
        cache: dict[tuple[int, int], np.ndarray] = {}

        def power(i, n):
            key = (i, n)
            if key not in cache:
                m = (X, Y, Z)[i]
                cache[key] = np.linalg.matrix_power(m if n >= 0 else m.conj().T, abs(n))
            return cache[key]

        for (a, b, c), coeff in self.terms.items():
            out += coeff.evaluate(phases) * (power(0, a) @ power(1, b) @ power(2, c))
        return out

    def to_json(self) -> list:
        return [[list(k), v.to_json()] for k, v in sorted(self.terms.items())]

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            w = " ".join(
                f"{g}^{e}" if e != 1 else g for g, e in zip(self.rel.generators, k) if e != 0
            ) or "1"
            parts.append(f"({v.format(self.rel.symbols)}) {w}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TorusElement[{self.rel.name}]({self.format()})"


def _as_elem(rel, x) -> TorusElement:
    if isinstance(x, TorusElement):
        return x
    return TorusElement.scalar(rel, _as_poly(x))


def normal_product(x: TorusElement, y: TorusElement) -> TorusElement:
    """Product of two torus elements, returned in ``U, V, W`` normal order."""
    x._check(y)
    rel = x.rel
    out: dict[Exp, PhasePoly] = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            phase = PhasePoly.monomial(word_product_phase(rel, w1, w2))
            w = _add(w1, w2)
            term = c1 * c2 * phase
            out[w] = out[w] + term if w in out else term
    return TorusElement(rel, out)


def adjoint(x: TorusElement) -> TorusElement:
    """``(c U^a V^b W^c)^* = conj(c) W^-c V^-b U^-a``, renormal-ordered."""
    rel = x.rel
    out = TorusElement.zero(rel)
    for (a, b, c), coeff in x.terms.items():
        w = TorusElement.word(rel, 0, 0, -c, coeff.conj())
        w = normal_product(w, TorusElement.word(rel, 0, -b, 0))
        w = normal_product(w, TorusElement.word(rel, -a, 0, 0))
        out = out + w
    return out


def twist_automorphism(x: TorusElement, vertex: int) -> TorusElement:
    """Apply the vertex twist ``X_i -> t_i X_i`` (a *-automorphism) to ``x``."""
    rel = x.rel
    t = rel.twists[vertex]
    out = {}
    for (a, b, c), coeff in x.terms.items():
        shift = _add(_add(_scale(a, t[0]), _scale(b, t[1])), _scale(c, t[2]))
        out[(a, b, c)] = coeff * PhasePoly.monomial(shift)
    return TorusElement(rel, out)


class TorusMatrix:
    """Square matrix with :class:`TorusElement` entries."""

    __slots__ = ("rel", "entries")

    def __init__(self, rel: TorusRelations, entries: Sequence[Sequence]):
        self.rel = rel
        self.entries = [[_as_elem(rel, e) for e in row] for row in entries]
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ValueError("torus matrix must be square")

    @property
    def k(self) -> int:
        return len(self.entries)

    @classmethod
    def zeros(cls, rel, k) -> "TorusMatrix":
        return cls(rel, [[0] * k for _ in range(k)])

    @classmethod
    def diag(cls, rel, elems) -> "TorusMatrix":
        k = len(elems)
        return cls(rel, [[elems[i] if i == j else 0 for j in range(k)] for i in range(k)])

    def __getitem__(self, ij) -> TorusElement:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusMatrix)
            and self.k == other.k
            and all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))
        )

    def __add__(self, other: "TorusMatrix") -> "TorusMatrix":
        return TorusMatrix(
            self.rel, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "TorusMatrix":
        return TorusMatrix(self.rel, [[-a for a in r] for r in self.entries])

    def __sub__(self, other: "TorusMatrix") -> "TorusMatrix":
        return self + (-other)

    def scale(self, c) -> "TorusMatrix":
        c = _as_poly(c)
        return TorusMatrix(self.rel, [[a * c for a in r] for r in self.entries])

    def __matmul__(self, other: "TorusMatrix") -> "TorusMatrix":
        k = self.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = TorusElement.zero(self.rel)
                for m in range(k):
                    a, b = self.entries[i][m], other.entries[m][j]
                    if a and b:
                        acc = acc + normal_product(a, b)
                row.append(acc)
            out.append(row)
        return TorusMatrix(self.rel, out)

    def adjoint(self) -> "TorusMatrix":
        k = self.k
        return TorusMatrix(self.rel, [[adjoint(self.entries[j][i]) for j in range(k)] for i in range(k)])

    def is_hermitian(self) -> bool:
        return self == self.adjoint()

    def is_zero(self) -> bool:
        return not any(e for r in self.entries for e in r)

    def nonzero_positions(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.entries) for j, e in enumerate(r) if e]

    def evaluate(self, phases, mats) -> np.ndarray:
        d = np.asarray(mats[0]).shape[0]
        k = self.k
        out = np.zeros((k * d, k * d), dtype=complex)
        for i in range(k):
            for j in range(k):
                e = self.entries[i][j]
                if e:
                    out[i * d : (i + 1) * d, j * d : (j + 1) * d] = e.evaluate(phases, mats)
        return out

    def to_json(self) -> list:
        return [[e.to_json() for e in r] for r in self.entries]

    def __repr__(self):
        rows = ["[" + ", ".join(e.format() for e in r) + "]" for r in self.entries]
        return f"TorusMatrix[{self.rel.name}](\n  " + ",\n  ".join(rows) + ")"


def rho_embed(x: TorusElement, lattice="D") -> TorusMatrix:
    """Diagonal embedding of the torus into ``M_k`` of itself defined by the spanning tree."""
    rel = relations_for(lattice)
    if x.rel != rel:
        raise ValueError(f"element belongs to {x.rel.name}, not {rel.name}")
    return TorusMatrix.diag(rel, [twist_automorphism(x, v) for v in range(rel.k)])


def harper_symbolic(lattice="D") -> TorusMatrix:
    """Matrix Harper operator of the P, D or G network."""
    rel = relations_for(lattice)
    X, Y, Z = TorusElement.generators(rel)
    one = TorusElement.scalar(rel, 1)
    if rel.name == "P":
        return TorusMatrix(rel, [[X + X.H + Y + Y.H + Z + Z.H]])
    if rel.name == "D":
        s = one + X + Y + Z
        return TorusMatrix(rel, [[0, s.H], [s, 0]])
    A, B, C = X, Y, Z
    return TorusMatrix(
        rel,
        [
            [0, one, one, one],
            [one, 0, A, B.H],
            [one, A.H, 0, C],
            [one, B, C.H, 0],
        ],
    )


def conj_reduce(X: TorusMatrix, m: TorusElement, scalar, keep=1) -> TorusMatrix:
    """``keep * X - scalar * rho(m) X rho(m)^*`` for a unitary monomial ``m``."""
    if len(m.terms) != 1 or not next(iter(m.terms.values())).is_monomial():
        raise ValueError("conjugating element must be a unitary monomial")
    r = rho_embed(m, X.rel.name)
    return X.scale(keep) - (r @ X @ r.adjoint()).scale(scalar)


# ---------------------------------------------------------------------------
# reduction chain for the diamond algebra


def d_symbols():
    """Handy D-algebra monomials: chi1..3, q1..3 as :class:`PhasePoly`."""
    chi1, chi2, chi3 = mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)
    return chi1, chi2, chi3, PhasePoly.monomial(Q1), PhasePoly.monomial(Q2), PhasePoly.monomial(Q3)


def x3_closed_form() -> tuple[PhasePoly, PhasePoly, PhasePoly, PhasePoly]:
    """Coefficients ``(a, b, c, d)`` of ``1, U^*, V^*, W^*`` in the (1,2) entry of X3."""
    chi1, chi2, _, q1, q2, q3 = d_symbols()
    c14, c24 = chi1**4, chi2**4
    cb14, cb24 = c14.conj(), c24.conj()
    one = PhasePoly.one()
    a = (one - c14 * c24) * (one - cb24) * (one - cb14)
    b = (one - c14 * c24 * q2) * (one - cb24 * q1) * (one - cb14)
    c = (one - c14 * c24 * q3) * (one - cb24) * (one - cb14 * q1.conj())
    d = (one - c14 * c24) * (one - cb24 * q3.conj()) * (one - cb14 * q2.conj())
    return a, b, c, d


def a_double_prime() -> PhasePoly:
    _, _, _, q1, q2, _ = d_symbols()
    one = PhasePoly.one()
    a = x3_closed_form()[0]
    return (q2.conj() - one) * (q1 - one) * (q1.conj() - one) * a


def x_chain():
    """``H, X1, X2, X3`` of the diamond reduction.

    Each step is ``X - s rho(m) X rho(m)^*`` with ``(m, s)`` equal to
    ``(U, conj(chi1)^2)``, ``(V, conj(chi2)^2)`` and ``(W, chi1^2 chi2^2)``;
    the scalar is the one that cancels the generator's twist in the lower
    left block.
    """
    rel = D_RELATIONS
    chi1, chi2, *_ = d_symbols()
    U, V, W = TorusElement.generators(rel)
    H = harper_symbolic("D")
    X1 = conj_reduce(H, U, (chi1**2).conj())
    X2 = conj_reduce(X1, V, (chi2**2).conj())
    X3 = conj_reduce(X2, W, chi1**2 * chi2**2)
    return H, X1, X2, X3


def x_chain_tail(X3: TorusMatrix):
    """``X4, X5, X6``: each step removes one of the ``V^*, U^*, W^*`` terms of X3's corner.

    ``X4 = conj(q1) X3 - chi1^2 rho(U) X3 rho(U)^*`` (kills ``V^*``),
    ``X5 = q1 X4 - chi2^2 rho(V) X4 rho(V)^*`` (kills ``U^*``),
    ``X6 = conj(q2) X5 - chi1^2 rho(U) X5 rho(U)^*`` (kills ``W^*``).
    """
    rel = D_RELATIONS
    chi1, chi2, _, q1, q2, _ = d_symbols()
    U, V, _ = TorusElement.generators(rel)
    X4 = conj_reduce(X3, U, chi1**2, keep=q1.conj())
    X5 = conj_reduce(X4, V, chi2**2, keep=q1)
    X6 = conj_reduce(X5, U, chi1**2, keep=q2.conj())
    return X4, X5, X6


def x_chain_tail_literal(X3: TorusMatrix):
    """Tail steps with the conjugators exactly as printed: ``U_f2``, ``U_f3``, ``U_f4``.

    ``U_f2 = conj(chi1) U``, ``U_f3 = conj(chi2) V``, ``U_f4 = chi1 chi2 W``; the
    scalars are ``chi1^4``, ``chi2^4`` and ``conj(chi1 chi2)^4``.  Kept for
    diagnostics: this version does not isolate ``E12``.
    """
    rel = D_RELATIONS
    chi1, chi2, _, q1, q2, _ = d_symbols()
    U, V, W = TorusElement.generators(rel)
    Uf2, Uf3, Uf4 = U * chi1.conj(), V * chi2.conj(), W * (chi1 * chi2)
    X4 = conj_reduce(X3, Uf2, chi1**4, keep=q1.conj())
    X5 = conj_reduce(X4, Uf3, chi2**4, keep=q1)
    X6 = conj_reduce(X5, Uf4, (chi1 * chi2).conj() ** 4, keep=q2.conj())
    return X4, X5, X6


def _report(check: str, mismatches: list) -> dict:
    return {"check": check, "status": "pass" if not mismatches else "fail", "mismatches": mismatches}


def _mismatch(pos, expected, got, names=("chi1", "chi2", "chi3")):
    return {"position": pos, "expected": expected.format(names), "got": got.format(names)}


def verify_X3() -> dict:
    """Compare the symbolic X1 and X3 against their closed forms."""
    rel = D_RELATIONS
    _, _, _, q1, q2, _ = d_symbols()
    H, X1, X2, X3 = x_chain()
    mismatches = []
    one = PhasePoly.one()
    expected_x1 = {(0, 1, 0): one - q1, (0, 0, 1): one - q2}
    for w in set(expected_x1) | set(X1[1, 0].terms):
        exp_c = expected_x1.get(w, PhasePoly())
        got = X1[1, 0].coefficient(w)
        if exp_c != got:
            mismatches.append(_mismatch(f"X1[2,1] {w}", exp_c, got))
    a, b, c, d = x3_closed_form()
    expected = {(0, 0, 0): a, (-1, 0, 0): b, (0, -1, 0): c, (0, 0, -1): d}
    corner = X3[0, 1]
    for w in set(expected) | set(corner.terms):
        exp_c = expected.get(w, PhasePoly())
        got = corner.coefficient(w)
        if exp_c != got:
            mismatches.append(_mismatch(f"X3[1,2] {w}", exp_c, got))
    for pos in [(0, 0), (1, 0), (1, 1)]:
        if X3[pos]:
            mismatches.append(
                {"position": f"X3[{pos[0] + 1},{pos[1] + 1}]", "expected": "0", "got": X3[pos].format()}
            )
    return _report("X3", mismatches)


def verify_X6() -> dict:
    """Check that the tail of the reduction leaves ``a'' E12``."""
    X3 = x_chain()[3]
    X6 = x_chain_tail(X3)[2]
    mismatches = []
    app = a_double_prime()
    corner = X6[0, 1]
    got = corner.coefficient(ZERO3)
    if got != app:
        mismatches.append(_mismatch("X6[1,2] 1", app, got))
    for w, coeff in corner.terms.items():
        if w != ZERO3:
            mismatches.append(_mismatch(f"X6[1,2] {w}", PhasePoly(), coeff))
    for pos in [(0, 0), (1, 0), (1, 1)]:
        if X6[pos]:
            mismatches.append(
                {"position": f"X6[{pos[0] + 1},{pos[1] + 1}]", "expected": "0", "got": X6[pos].format()}
            )
    return _report("X6", mismatches)


def verify_phase_relations(n_points: int = 100, seed: int = 42, tol: float = 1e-12) -> dict:
    """Numeric check of the q(chi) relations and the eighth-power inversions."""
    from .geometry import eighth_power_residuals, q_from_chi

    rng = np.random.default_rng(seed)
    worst = 0.0
    mismatches = []
    for i in range(n_points):
        chi = tuple(np.exp(1j * rng.uniform(0, 2 * np.pi, 3)))
        q = q_from_chi(*chi)
        # the monomials used by the symbolic algebra must agree with the numeric map
        q_sym = tuple(PhasePoly.monomial(e).evaluate(chi) for e in (Q1, Q2, Q3))
        r = max(float(eighth_power_residuals(chi, q).max()), max(abs(a - b) for a, b in zip(q, q_sym)))
        worst = max(worst, r)
        if r > tol:
            mismatches.append({"position": f"sample {i}", "expected": f"<= {tol}", "got": f"{r:.3e}"})
    rep = _report("phase_relations", mismatches)
    rep["max_residual"] = worst
    return rep


def element_from_json(rel: TorusRelations, data) -> TorusElement:
    return TorusElement(rel, {tuple(w): PhasePoly.from_json(c) for w, c in data})


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
