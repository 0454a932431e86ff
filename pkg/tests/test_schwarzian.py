from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from replica.exact import QQ, PolyRing
from replica.fixtures import diff_series, load_fixture
from replica.schwarzian import (Inconsistent, NoConstantMultiplier, SchwarzianProblem, WNotNormalized,
                                composition_law_residual, decomposition_residual, epsilon_family,
                                expand_in_epsilon, multiplier_check, rank2_residual, schwarzian_residual,
                                solve_correspondence, solve_family, solve_one_param, solve_two_param,
                                specialize, transport_residuals, two_param_law_residual)
from replica.series import LaurentSeries, TruncatedSeries
from replica.special import build_F, nome_from_f, w_body


@pytest.fixture(scope="module")
def elliptic8():
    return solve_one_param(SchwarzianProblem.from_spec("elliptic", 8))


def test_one_param_family_matches_table(elliptic8):
    assert diff_series(elliptic8.series, load_fixture("family_a"))
    assert elliptic8.kind == "one-param" and elliptic8.ledger == []


def test_family_at_three(elliptic8):
    y3 = specialize(elliptic8.series, {"a": 3})
    assert y3.coeffs[3] == 1917216
    assert diff_series(y3, load_fixture("a3"))


def test_residuals_vanish(elliptic8):
    V = w_body("elliptic", 9)
    F = build_F("elliptic", 9)
    for a in (Fraction(3), Fraction(-2, 5)):
        y = specialize(elliptic8.series, {"a": a})
        assert schwarzian_residual(V, y).is_zero()
        assert rank2_residual(F, 0, y).is_zero()
    for r in transport_residuals(F, elliptic8).values():
        assert r["vanishes"]


def test_composition_and_decomposition(elliptic8):
    fam = type(elliptic8)(elliptic8.kind, elliptic8.series.truncate(6))
    assert composition_law_residual(fam).is_zero()
    Q = nome_from_f(build_F("elliptic", 8))
    assert decomposition_residual(elliptic8, Q, Q.revert()).is_zero()


def test_multiplier():
    for N in (2, 3, 5):
        y = solve_correspondence(SchwarzianProblem.from_spec("elliptic", N + 6, ring=QQ), N).series
        assert multiplier_check(build_F("elliptic", N + 6), y) == N
    with pytest.raises(NoConstantMultiplier):
        multiplier_check(build_F("elliptic", 6), TruncatedSeries([0, 1, 5], 6))


def test_correspondence_needs_normalized_w():
    pr = SchwarzianProblem.from_spec("elliptic", 6, alpha=1, ring=QQ)
    with pytest.raises(WNotNormalized):
        solve_correspondence(pr, 2)
    with pytest.raises(ValueError):
        solve_correspondence(SchwarzianProblem.from_spec("elliptic", 6, ring=QQ), 1)


def test_free_coefficient_needs_parameter_ring():
    pr = SchwarzianProblem.from_spec("elliptic", 4, alpha=1, ring=QQ)
    with pytest.raises(Inconsistent):
        solve_family(pr, 1, lead=1)


def test_two_param_family():
    Y = solve_two_param(SchwarzianProblem.from_spec("elliptic", 6, alpha=1))
    assert Y.ledger == [(2, "b")]
    assert two_param_law_residual(Y).is_zero()
    assert diff_series(Y.series.truncate(2), load_fixture("family_abY"))
    with pytest.raises(NotImplementedError):
        solve_two_param(SchwarzianProblem.from_spec("elliptic", 4, alpha=2), alpha=2)


def test_two_param_reduces_at_b_zero():
    Y = solve_two_param(SchwarzianProblem.from_spec("elliptic", 6, alpha=1))
    y0 = specialize(Y.series, {"b": 0}, PolyRing(("a",)))
    fam = solve_one_param(SchwarzianProblem.from_spec("elliptic", 6))
    assert [PolyRing(("a",))(c) for c in y0.coeffs] == fam.series.coeffs


def test_epsilon_recursion():
    K = 10
    fam = solve_one_param(SchwarzianProblem.from_spec("elliptic", K))
    E = expand_in_epsilon(fam, 4)
    B = epsilon_family(build_F("elliptic", K), 4, K)
    assert E[0] == TruncatedSeries.x(K) or (E[0] - TruncatedSeries.x(K)).is_zero()
    for n in range(4):
        assert (E[n + 1] - B[n]).is_zero()


def test_heun_family_and_multiplier():
    fam = solve_one_param(SchwarzianProblem.from_spec("heun81", 6))
    assert diff_series(fam.series, load_fixture("SchwarzHeun"))
    G = build_F("heun81", 6)
    assert multiplier_check(G, specialize(fam.series, {"a": 4}), squared=True) == 2
    assert multiplier_check(G, specialize(fam.series, {"a": Fraction(9, 4)}), squared=True) == Fraction(3, 2)


# ------------------------------------------------------------- properties

K = 9
coef = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def _series(lead, tail):
    return TruncatedSeries([0, lead] + tail, K)


@given(coef, st.lists(coef, min_size=K - 1, max_size=K - 1), st.tuples(coef, coef, coef, coef))
def test_schwarzian_moebius_invariance(lead, tail, m):
    a, b, c, d = m
    assume(lead != 0 and a * d - b * c != 0 and d != 0)
    f = _series(lead, tail)
    g = (f.scale(a) + b) / (f.scale(c) + d)
    s1 = LaurentSeries(f, 0).schwarzian()
    s2 = LaurentSeries(g, 0).schwarzian()
    top = min(s1.order, s2.order)
    assert (s1 - s2).truncate_abs(top).is_zero()


@given(coef, st.lists(coef, min_size=K - 1, max_size=K - 1), coef, st.lists(coef, min_size=K - 1, max_size=K - 1))
def test_schwarzian_chain_rule(la, ta, lb, tb):
    assume(la != 0 and lb != 0)
    f = _series(la, ta)
    g = _series(lb, tb)
    lhs = LaurentSeries(f.compose(g), 0).schwarzian()
    sf = LaurentSeries(f.truncate(K - 3).shift(0), 0).schwarzian()
    # {f o g} = ({f} o g) g'^2 + {g}; {f} is a power series here since f'(0) != 0
    sf_series = sf.body.shift(sf.shift) if sf.shift >= 0 else sf.to_series()
    g1 = LaurentSeries(g.derive(), 0)
    rhs = LaurentSeries(sf_series.compose(g.truncate(sf_series.K)), 0) * g1 * g1 + LaurentSeries(g, 0).schwarzian()
    top = min(lhs.order, rhs.order)
    assert (lhs - rhs).truncate_abs(top).is_zero()


@given(st.integers(-800, 800), st.integers(-5000, 5000))
def test_transport_residuals_vanish_for_random_polynomial_F(c2, c3):
    Fs = f"poly:1,{c2},{c3}"
    fam = solve_one_param(SchwarzianProblem.from_spec(Fs, 6))
    res = transport_residuals(build_F(Fs, 7), fam)
    assert all(r["vanishes"] for r in res.values())
