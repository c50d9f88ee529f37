from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wirenet import repn
from wirenet.geometry import DParams, unit
from wirenet.symbolic import (
    D_RELATIONS,
    G_RELATIONS,
    P_RELATIONS,
    PhasePoly,
    TorusElement,
    TorusMatrix,
    a_double_prime,
    adjoint,
    conj_reduce,
    d_symbols,
    element_from_json,
    harper_symbolic,
    mono,
    normal_product,
    rho_embed,
    verify_phase_relations,
    verify_X3,
    verify_X6,
    word_product_phase,
    x3_closed_form,
    x_chain,
    x_chain_tail,
    x_chain_tail_literal,
)

small = st.integers(-3, 3)
exps = st.tuples(small, small, small)
polys = st.dictionaries(exps, st.integers(-3, 3), max_size=3).map(PhasePoly)
words = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))


def elements(rel):
    return st.dictionaries(words, polys, max_size=3).map(lambda d: TorusElement(rel, d))


d_elems = elements(D_RELATIONS)
g_elems = elements(G_RELATIONS)


# --- swap-by-swap reference ---------------------------------------------------


def swap_oracle(rel, w1, w2):
    """Normal-order U^a V^b W^c U^d V^e W^f one adjacent letter swap at a time."""
    letters = []
    for w in (w1, w2):
        for gen, n in enumerate(w):
            letters += [(gen, 1 if n > 0 else -1)] * abs(n)
    c = {(0, 1): rel.c12, (0, 2): rel.c13, (1, 2): rel.c23}
    phase = [0, 0, 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            (g1, s1), (g2, s2) = letters[i], letters[i + 1]
            if g1 > g2:
                # X_j^s X_i^t = c_ij^(-s t) X_i^t X_j^s
                e = c[(g2, g1)]
                phase = [p - s1 * s2 * x for p, x in zip(phase, e)]
                letters[i], letters[i + 1] = letters[i + 1], letters[i]
                changed = True
    word = [0, 0, 0]
    for g, s in letters:
        word[g] += s
    return tuple(word), tuple(phase)


@settings(max_examples=200)
@given(words, words)
def test_word_phase_matches_swap_oracle(w1, w2):
    for rel in (D_RELATIONS, G_RELATIONS, P_RELATIONS):
        word, phase = swap_oracle(rel, w1, w2)
        assert word == tuple(a + b for a, b in zip(w1, w2))
        assert phase == word_product_phase(rel, w1, w2)


def test_uvw_times_u_against_oracle():
    rel = D_RELATIONS
    U, V, W = TorusElement.generators(rel)
    got = normal_product(normal_product(normal_product(U, V), W), U)
    word, phase = swap_oracle(rel, (1, 1, 1), (1, 0, 0))
    assert got == TorusElement(rel, {word: PhasePoly.monomial(phase)})


# --- PhasePoly ----------------------------------------------------------------


def test_phasepoly_drops_zero_terms():
    p = PhasePoly({(1, 0, 0): 2, (0, 1, 0): 0})
    assert p.terms == {(1, 0, 0): 2}
    assert not (p - p)


@given(polys, polys, st.tuples(*(st.floats(0, 6.3) for _ in range(3))))
def test_phasepoly_evaluation_is_ring_homomorphism(p, q, ang):
    z = tuple(np.exp(1j * np.array(ang)))
    assert (p * q).evaluate(z) == pytest.approx(p.evaluate(z) * q.evaluate(z), abs=1e-9)
    assert (p + q).evaluate(z) == pytest.approx(p.evaluate(z) + q.evaluate(z), abs=1e-9)
    assert p.conj().evaluate(z) == pytest.approx(np.conj(p.evaluate(z)), abs=1e-9)


def test_phasepoly_powers():
    x = mono(1, 0, 0) - PhasePoly.one()
    assert x**0 == PhasePoly.one()
    assert x**2 == x * x
    assert mono(1, 0, 0) ** -2 == mono(-2, 0, 0)


def test_phasepoly_json_round_trip():
    a = x3_closed_form()[0]
    assert PhasePoly.from_json(a.to_json()) == a


# --- torus elements -----------------------------------------------------------


def test_unit_law():
    U, V, W = TorusElement.generators(D_RELATIONS)
    one = TorusElement.scalar(D_RELATIONS, 1)
    x = U + V * W
    assert normal_product(one, x) == x == normal_product(x, one)


def test_uv_and_vu():
    U, V, _ = TorusElement.generators(D_RELATIONS)
    _, _, _, q1, _, _ = d_symbols()
    assert normal_product(U, V) == TorusElement.word(D_RELATIONS, 1, 1, 0)
    assert normal_product(V, U) == TorusElement.word(D_RELATIONS, 1, 1, 0, coeff=q1.conj())


def test_adjoint_of_generator():
    U = TorusElement.generators(D_RELATIONS)[0]
    assert adjoint(U) == TorusElement.word(D_RELATIONS, -1, 0, 0)
    assert normal_product(U, adjoint(U)) == TorusElement.scalar(D_RELATIONS, 1)


@settings(max_examples=200, deadline=None)
@given(d_elems, d_elems, d_elems)
def test_associativity_d(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=50, deadline=None)
@given(g_elems, g_elems, g_elems)
def test_associativity_g(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=100, deadline=None)
@given(d_elems, d_elems)
def test_adjoint_is_antimultiplicative_involution(x, y):
    assert adjoint(adjoint(x)) == x
    assert adjoint(x * y) == adjoint(y) * adjoint(x)


def test_uv_adjoint_two_routes():
    U, V, _ = TorusElement.generators(D_RELATIONS)
    assert adjoint(normal_product(U, V)) == normal_product(adjoint(V), adjoint(U))


def test_json_round_trip():
    x = TorusElement.generators(D_RELATIONS)[0] * mono(2, 0, -1) + TorusElement.scalar(D_RELATIONS, 3)
    assert element_from_json(D_RELATIONS, x.to_json()) == x


# evaluation homomorphism on a finite representation at matching rational phases
CHI_TURNS = [
    (Fraction(1, 16), Fraction(1, 16), Fraction(3, 16)),
    (Fraction(1, 8), Fraction(0), Fraction(1, 4)),
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)),
]


@pytest.mark.parametrize("turns", CHI_TURNS)
def test_evaluation_homomorphism(turns):
    p = DParams.from_turns(*turns)
    rep = repn.torus_rep(repn.skew_for_params("D", p), repn.Twist.from_turns(0.1, 0.2, 0.3), mode="reduced")
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y = (
            TorusElement(D_RELATIONS, {tuple(rng.integers(-2, 3, 3)): PhasePoly.monomial(tuple(rng.integers(-2, 3, 3)))
                                       for _ in range(3)})
            for _ in range(2)
        )
        lhs = normal_product(x, y).evaluate(p.chi, rep.mats)
        rhs = x.evaluate(p.chi, rep.mats) @ y.evaluate(p.chi, rep.mats)
        assert np.abs(lhs - rhs).max() < 1e-10


# --- rho and Harper -----------------------------------------------------------


def test_rho_d_generators():
    U, V, W = TorusElement.generators(D_RELATIONS)
    chi1, chi2, *_ = d_symbols()
    assert rho_embed(U, "D") == TorusMatrix.diag(D_RELATIONS, [U, U * chi1**2])
    assert rho_embed(V, "D") == TorusMatrix.diag(D_RELATIONS, [V, V * chi2**2])
    assert rho_embed(W, "D") == TorusMatrix.diag(D_RELATIONS, [W, W * (chi1 * chi2).conj() ** 2])


def test_rho_is_unital_star_homomorphism():
    rng = np.random.default_rng(1)
    for rel, name in ((D_RELATIONS, "D"), (G_RELATIONS, "G")):
        one = TorusElement.scalar(rel, 1)
        assert rho_embed(one, name) == TorusMatrix.diag(rel, [one] * rel.k)
        for _ in range(100):
            x = TorusElement.word(rel, *rng.integers(-2, 3, 3))
            y = TorusElement.word(rel, *rng.integers(-2, 3, 3))
            assert rho_embed(x * y, name) == rho_embed(x, name) @ rho_embed(y, name)
            assert rho_embed(adjoint(x), name) == rho_embed(x, name).adjoint()


def test_rho_rejects_foreign_element():
    with pytest.raises(ValueError):
        rho_embed(TorusElement.generators(G_RELATIONS)[0], "D")


def test_harper_shapes():
    U, V, W = TorusElement.generators(D_RELATIONS)
    one = TorusElement.scalar(D_RELATIONS, 1)
    HD = harper_symbolic("D")
    assert HD[1, 0] == one + U + V + W
    A, B, C = TorusElement.generators(G_RELATIONS)
    HG = harper_symbolic("G")
    assert HG[1, 2] == A and HG[1, 3] == adjoint(B) and HG[2, 3] == C
    assert HG[0, 1] == HG[0, 2] == HG[0, 3] == TorusElement.scalar(G_RELATIONS, 1)
    X, Y, Z = TorusElement.generators(P_RELATIONS)
    assert harper_symbolic("P")[0, 0] == X + adjoint(X) + Y + adjoint(Y) + Z + adjoint(Z)
    for name in "PDG":
        assert harper_symbolic(name).is_hermitian()


def test_hat_involution_squares_to_identity_when_chi4_trivial():
    U, V, W = TorusElement.generators(D_RELATIONS)
    chi1, chi2, *_ = d_symbols()
    hats = [chi1**2, chi2**2, (chi1 * chi2).conj() ** 2]
    rng = np.random.default_rng(2)
    for _ in range(20):
        a1, a2 = (Fraction(int(k), 4) for k in rng.integers(0, 4, 2))
        z = (unit(a1), unit(a2), unit(Fraction(int(rng.integers(0, 16)), 16)))
        for h in hats:
            assert (h * h).evaluate(z) == pytest.approx(1, abs=1e-12)


# --- reduction chain ----------------------------------------------------------


def test_conj_reduce_x1():
    _, _, _, q1, q2, _ = d_symbols()
    U, V, W = TorusElement.generators(D_RELATIONS)
    chi1 = d_symbols()[0]
    H = harper_symbolic("D")
    X1 = conj_reduce(H, U, (chi1**2).conj())
    assert X1[1, 0] == V * (PhasePoly.one() - q1) + W * (PhasePoly.one() - q2)


def test_conj_reduce_of_zero():
    Z = TorusMatrix.zeros(D_RELATIONS, 2)
    U = TorusElement.generators(D_RELATIONS)[0]
    assert conj_reduce(Z, U, mono(1, 0, 0)).is_zero()


def test_conj_reduce_needs_monomial():
    U, V, _ = TorusElement.generators(D_RELATIONS)
    with pytest.raises(ValueError):
        conj_reduce(harper_symbolic("D"), U + V, 1)


def test_conj_reduce_commutes_with_evaluation():
    p = DParams.from_turns(Fraction(1, 16), Fraction(1, 16), Fraction(3, 16))
    rep = repn.torus_rep(repn.skew_for_params("D", p), mode="reduced")
    U, V, W = TorusElement.generators(D_RELATIONS)
    rng = np.random.default_rng(5)
    ents = [[TorusElement.word(D_RELATIONS, *rng.integers(-2, 3, 3), coeff=mono(*rng.integers(-2, 3, 3)))
             for _ in range(2)] for _ in range(2)]
    X = TorusMatrix(D_RELATIONS, ents)
    s = mono(1, -1, 0)
    red = conj_reduce(X, V, s).evaluate(p.chi, rep.mats)
    Xn = X.evaluate(p.chi, rep.mats)
    r = rho_embed(V, "D").evaluate(p.chi, rep.mats)
    direct = Xn - s.evaluate(p.chi) * r @ Xn @ r.conj().T
    assert np.abs(red - direct).max() < 1e-10


def test_verify_x3_and_x6_pass():
    r3, r6 = verify_X3(), verify_X6()
    assert r3["status"] == "pass", r3["mismatches"]
    assert r6["status"] == "pass", r6["mismatches"]


def test_x3_vanishes_at_trivial_phases():
    X3 = x_chain()[3]
    assert np.abs(X3.evaluate((1, 1, 1), [np.eye(1)] * 3)).max() == 0


def test_x3_numeric_against_closed_forms():
    X3 = x_chain()[3]
    a, b, c, d = x3_closed_form()
    rng = np.random.default_rng(7)
    for _ in range(50):
        # commuting scalar "representation": the chain is an identity in the coefficient ring
        chi = tuple(np.exp(1j * rng.uniform(0, 2 * np.pi, 3)))
        corner = X3[0, 1]
        for poly, w in ((a, (0, 0, 0)), (b, (-1, 0, 0)), (c, (0, -1, 0)), (d, (0, 0, -1))):
            assert corner.coefficient(w).evaluate(chi) == pytest.approx(poly.evaluate(chi), abs=1e-12)


def test_x6_is_a_double_prime_e12():
    X6 = x_chain_tail(x_chain()[3])[2]
    assert X6.nonzero_positions() == [(0, 1)]
    app = a_double_prime()
    assert X6[0, 1] == TorusElement.scalar(D_RELATIONS, app)
    rng = np.random.default_rng(8)
    for _ in range(20):
        chi = tuple(np.exp(1j * rng.uniform(0, 2 * np.pi, 3)))
        q1 = d_symbols()[3].evaluate(chi)
        q2 = d_symbols()[4].evaluate(chi)
        a = x3_closed_form()[0].evaluate(chi)
        expect = (np.conj(q2) - 1) * (q1 - 1) * (np.conj(q1) - 1) * a
        assert app.evaluate(chi) == pytest.approx(expect, abs=1e-12)


def test_a_double_prime_vanishes_when_q_trivial():
    # chi = (1/2, 1/2, 0) turns gives q1 = 1
    chi = tuple(unit(t) for t in (Fraction(1, 2), Fraction(1, 2), 0))
    assert abs(a_double_prime().evaluate(chi)) < 1e-12


def test_literal_tail_does_not_isolate_e12():
    X6 = x_chain_tail_literal(x_chain()[3])[2]
    assert X6.nonzero_positions() != [(0, 1)] or len(X6[0, 1].terms) > 1


def test_phase_relations_report():
    r = verify_phase_relations(n_points=100)
    assert r["status"] == "pass"
