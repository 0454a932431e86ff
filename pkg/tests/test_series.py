import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from replica.exact import GF, QQ, PolyRing
from replica.series import (BadValuation, DivisionValuation, IntegrationObstruction, LaurentSeries,
                            NonpositiveValuation, NonUnitConstantTerm, PoleAtOrigin, PrecisionUnderflow,
                            PuiseuxBranch, TruncatedSeries, ValuationNotDivisible, expand_rational,
                            rational_terms)

X = sympy.Symbol("x")


def sym_coeffs(expr, K):
    s = sympy.series(expr, X, 0, K + 1).removeO()
    return [Fraction(str(s.coeff(X, k))) for k in range(K + 1)]


def S(coeffs, K=None):
    return TruncatedSeries([Fraction(c) for c in coeffs], K)


def test_elementary_functions_against_sympy():
    K = 9
    x = TruncatedSeries.x(K)
    f = x + x * x * 3 - x ** 3 * Fraction(1, 2)
    assert f.exp().coeffs == sym_coeffs(sympy.exp(X + 3 * X**2 - X**3 / 2), K)
    assert (1 + f).log().coeffs == sym_coeffs(sympy.log(1 + X + 3 * X**2 - X**3 / 2), K)
    assert (1 + f).sqrt().coeffs == sym_coeffs(sympy.sqrt(1 + X + 3 * X**2 - X**3 / 2), K)
    assert (1 - 2 * x).pow_rational(Fraction(-5, 12)).coeffs == sym_coeffs((1 - 2 * X) ** sympy.Rational(-5, 12), K)
    assert (1 + f).inverse().coeffs == sym_coeffs(1 / (1 + X + 3 * X**2 - X**3 / 2), K)


def test_compose_and_revert_against_sympy():
    K = 8
    x = TruncatedSeries.x(K)
    g = x - x * x * 2
    f = (x * 3).exp() - 1
    assert f.compose(g).coeffs == sym_coeffs(sympy.exp(3 * (X - 2 * X**2)) - 1, K)
    # x = y - 2 y^2 solved for y
    assert g.revert().coeffs == sym_coeffs((1 - sympy.sqrt(1 - 8 * X)) / 4, K)


def test_precision_rules():
    f = S([0, 1, 2], 5)
    g = S([0, 0, 1, 1], 3)
    assert (f * g).K == min(5 + 2, 3 + 1)
    assert (f + g).K == 3
    assert f.shift(2).K == 7 and g.shift(-2).K == 1
    q = g / f
    assert q.K == min(3 - 1, 5 - 2 + 2)
    assert (q * f).truncate(q.K).coeffs == g.truncate(q.K).coeffs


def test_errors():
    x = TruncatedSeries.x(5)
    with pytest.raises(DivisionValuation):
        x.inverse()
    with pytest.raises(DivisionValuation):
        x / (x * x)
    with pytest.raises(DivisionValuation):
        (1 + x).shift(-1)
    with pytest.raises(NonpositiveValuation):
        x.compose(1 + x)
    with pytest.raises(BadValuation):
        (x * x).revert()
    with pytest.raises(NonUnitConstantTerm):
        (2 + x).log()
    with pytest.raises(NonUnitConstantTerm):
        (1 + x).exp()
    with pytest.raises(PrecisionUnderflow):
        TruncatedSeries([1], -1)
    with pytest.raises(ValuationNotDivisible):
        (x ** 3).nth_root_split(2)
    with pytest.raises(IntegrationObstruction):
        TruncatedSeries.x(4, GF(3)).shift(1).integrate()
    with pytest.raises(PoleAtOrigin):
        expand_rational([1], [0, 1], 4)
    with pytest.raises(BadValuation):
        PuiseuxBranch(2, 1 + x)


def test_expand_rational_and_json():
    s = expand_rational([0, 1], [1, -1, -1], 12)
    assert [int(c) for c in s.coeffs] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]
    t = S([Fraction(1, 3), 0, Fraction(-7, 2)], 4)
    back = TruncatedSeries.from_json(json.dumps(t.to_json()))
    assert back.coeffs == t.coeffs and back.K == t.K
    assert rational_terms(t)[:3] == ["1/3", "0", "-7/2"]


def test_series_over_finite_field():
    F = GF(5)
    f = TruncatedSeries([1, 2, 3], 6, F)
    assert (f * f.inverse()).coeffs == [1, 0, 0, 0, 0, 0, 0]


def test_series_over_parameters():
    R = PolyRing(("a",))
    a = R.gen("a")
    f = TruncatedSeries([R.zero, a, a * a], 4, R)
    with pytest.raises(BadValuation):
        f.revert()  # a is not a unit in Q[a]
    x = TruncatedSeries.x(4, R)
    g = TruncatedSeries([R.zero, R.one, a], 4, R)
    assert (g.revert().compose(g) - x).is_zero()


def test_laurent_schwarzian_of_moebius_is_zero():
    x = TruncatedSeries.x(8)
    m = x / (1 - 2 * x).truncate(8)
    assert LaurentSeries(m, 0).schwarzian().is_zero()


def test_repr():
    assert repr(S([0, 1, -1, Fraction(1, 2)])) == "x + -x^2 + (1/2)*x^3 + O(x^4)"


small = st.integers(-6, 6)
tails = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7), min_size=2, max_size=10)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=5), tails)
def test_compose_revert_round_trip(lead, tail):
    assume(lead != 0)
    f = TruncatedSeries([0, lead] + tail)
    g = f.revert()
    K = f.K
    x = TruncatedSeries.x(K)
    assert (f.compose(g) - x).truncate(K).is_zero()
    assert (g.compose(f) - x).truncate(K).is_zero()


@given(tails, tails)
def test_product_quotient_round_trip(a, b):
    f = TruncatedSeries(a)
    g = TruncatedSeries([1] + b)
    q = f / g
    assert ((q * g) - f).truncate(q.K).is_zero()


@given(tails)
def test_log_exp_round_trip(a):
    f = TruncatedSeries([0] + a)
    assert (f.exp().log() - f).is_zero()


@given(tails, st.integers(2, 5))
def test_nth_root(a, N):
    f = TruncatedSeries([0, 1] + a)
    r = (f ** N).nth_root_split(N)
    assert (r - f).truncate(r.K).is_zero()
