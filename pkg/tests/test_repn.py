import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wirenet import bloch, repn
from wirenet.geometry import DParams, GParams
from wirenet.repn import RationalSkew, Twist, axis_rep, clock, shift, torus_rep


def landau_matrix(p, N, th):
    """Cubic-lattice Harper matrix at flux p/N in the 12 plane, written out entry by entry."""
    M = np.zeros((N, N), dtype=complex)
    for j in range(N):
        M[j, j] += 2 * math.cos(th[0] - 2 * math.pi * p * j / N) + 2 * math.cos(th[2])
        k = (j + 1) % N
        M[j, k] += complex(math.cos(th[1]), math.sin(th[1]))
        M[k, j] += complex(math.cos(th[1]), -math.sin(th[1]))
    return M


def test_clock_shift_relation():
    for N in range(1, 9):
        C, S = clock(N), shift(N)
        w = np.exp(2j * np.pi / N)
        assert np.allclose(S @ C, w * C @ S)
        assert np.allclose(np.linalg.matrix_power(S, N), np.eye(N))
    with pytest.raises(ValueError):
        clock(0)


def test_skew_from_turns():
    s = RationalSkew.from_turns(Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    assert (s.p12, s.p13, s.p23, s.N) == (1, 2, 3, 4)
    assert s.thetas == (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    assert RationalSkew(2, 4, 0, 8).reduced() == RationalSkew(1, 2, 0, 4)
    with pytest.raises(ValueError):
        RationalSkew(0, 0, 0, 0)


def test_twist_must_be_unit():
    with pytest.raises(ValueError):
        Twist(2.0)


skews = st.integers(1, 5).flatmap(
    lambda N: st.builds(RationalSkew, st.integers(0, N - 1), st.integers(0, N - 1), st.integers(0, N - 1), st.just(N))
)
twists = st.tuples(*(st.floats(0, 1) for _ in range(3))).map(lambda t: Twist.from_turns(*t))


@settings(max_examples=150, deadline=None)
@given(skews, twists, st.sampled_from(["general", "reduced"]))
def test_random_reps_satisfy_relations(skew, tw, mode):
    rep = torus_rep(skew, tw, mode=mode)
    assert rep.commutation_residual() < 1e-12
    assert rep.unitarity_residual() < 1e-12


@settings(max_examples=60, deadline=None)
@given(skews)
def test_reduced_dimension_is_irreducible(skew):
    # the reduced model has dimension sqrt of the dimension of the algebra it generates
    from wirenet.closure import span_closure

    rep = torus_rep(skew, mode="reduced")
    assert span_closure(list(rep.mats)).dimension == rep.dimension**2
    assert rep.dimension <= skew.N


def test_general_cap_and_bad_mode():
    with pytest.raises(ValueError):
        torus_rep(RationalSkew(1, 0, 0, 20), mode="general")
    with pytest.raises(ValueError):
        torus_rep(RationalSkew(1, 0, 0, 2), mode="nope")
    with pytest.raises(ValueError):
        torus_rep(RationalSkew(1, 1, 0, 2), mode="axis")


@pytest.mark.parametrize("axis", ["12", "13", "23"])
def test_axis_rep(axis):
    rep = axis_rep(2, 5, axis, Twist.from_turns(0.1, 0.7, 0.3))
    assert rep.dimension == 5
    assert rep.commutation_residual() < 1e-12
    with pytest.raises(ValueError):
        axis_rep(1, 3, "21")


def test_skew_for_params():
    p = DParams.from_turns(Fraction(1, 16), Fraction(1, 16), Fraction(3, 16))
    s = repn.skew_for_params("D", p)
    assert s.thetas == p.q_turns
    g = GParams.from_turns(Fraction(1, 8), Fraction(1, 8), Fraction(3, 4))
    sg = repn.skew_for_params("G", g)
    assert sg.thetas == (Fraction(1, 2), Fraction(1, 2), Fraction(0))
    with pytest.raises(ValueError):
        repn.skew_for_params("D", DParams.from_chi(1, 1, 1))


def test_inconsistent_params_rejected():
    p = DParams.from_turns(Fraction(1, 16), Fraction(1, 16), Fraction(3, 16))
    wrong = torus_rep(RationalSkew(1, 0, 0, 2))
    with pytest.raises(ValueError):
        repn.harper_rep("D", wrong, p)


@pytest.mark.parametrize("lattice", ["D", "G"])
def test_harper_rep_hermitian(lattice):
    p = (
        DParams.from_turns(Fraction(1, 8), 0, Fraction(1, 4))
        if lattice == "D"
        else GParams.from_turns(Fraction(1, 16), Fraction(1, 8), Fraction(1, 4))
    )
    rep = torus_rep(repn.skew_for_params(lattice, p), Twist.from_turns(0.2, 0.5, 0.9), mode="reduced")
    H = repn.harper_rep(lattice, rep, p)
    assert np.abs(H - H.conj().T).max() < 1e-12


@pytest.mark.parametrize("lattice", ["P", "D", "G"])
def test_one_dimensional_reps_reproduce_bloch(lattice):
    rng = np.random.default_rng(11)
    params = {"P": None, "D": DParams.from_chi(1, 1, 1), "G": GParams(1, 1, 1)}[lattice]
    for _ in range(50):
        t = rng.random(3)
        rep = torus_rep(RationalSkew(0, 0, 0, 1), Twist.from_turns(*t), mode="general")
        H = repn.harper_rep(lattice, rep, params)
        B = bloch.evaluate_at_character(lattice, bloch.Character(*rep.twist.values))
        assert np.abs(H - B).max() < 1e-12


def test_twist_grid():
    g = repn.twist_grid(4)
    assert len(g) == 64
    assert g[0].values[0] == pytest.approx(np.exp(2j * np.pi / 8))


def test_merge_intervals():
    assert repn.merge_intervals([(2, 3), (0, 1), (0.5, 1.5)]) == [(0, 1.5), (2, 3)]


# --- butterfly ----------------------------------------------------------------


def test_butterfly_matches_landau_oracle():
    res = repn.butterfly("P", "12", denominators=range(1, 8), twist_grid_m=4)
    grid = repn.twist_grid(4)
    for f in res["fluxes"]:
        p, N = f["p"], f["N"]
        for tw, ev in zip(grid, f["eigenvalues"]):
            th = [float(np.angle(z)) for z in tw.values]
            ref = np.linalg.eigvalsh(landau_matrix(p, N, th))
            assert np.abs(ev - ref).max() < 1e-10


def test_butterfly_symmetry_and_band_count():
    res = repn.butterfly("P", "12", denominators=range(1, 10), twist_grid_m=4)
    by = {(f["p"], f["N"]): f for f in res["fluxes"]}
    for (p, N), f in by.items():
        assert len(f["bands"]) <= N
        mirror = by[((N - p) % N, N)]
        assert np.allclose(f["bands"], mirror["bands"], atol=1e-10)
        lo, hi = f["bands"][0][0], f["bands"][-1][1]
        assert -6 - 1e-12 <= lo and hi <= 6 + 1e-12


def test_zero_flux_band_is_full_width():
    res = repn.butterfly("P", "12", denominators=[1], twist_grid_m=8)
    (f,) = res["fluxes"]
    assert len(f["bands"]) == 1
    # half-offset grid stays inside [-6, 6]; it reaches within the grid resolution
    lo, hi = f["bands"][0]
    assert -6 < lo < -5.5 and 5.5 < hi < 6


def test_butterfly_rejects_other_lattices():
    with pytest.raises(ValueError):
        repn.butterfly("D")
