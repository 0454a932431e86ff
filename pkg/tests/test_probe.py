import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from replica.exact import BadReduction
from replica.fixtures import load_fixture
from replica.probe import (InsufficientTerms, OperatorOrderOne, PoleCollision, globally_bounded_probe,
                           p_curvature_numerator, p_curvature_order_one, p_curvature_scan, primes_between,
                           radius_estimate, reduce_mod_p, sigma_check)
from replica.series import TruncatedSeries, expand_rational
from replica.special import build_F, nome_from_f


def test_reduce_mod_p():
    s = TruncatedSeries([Fraction(1, 3), 2, Fraction(5, 7)], 2)
    assert reduce_mod_p(s, 5).coeffs == [2, 2, 0]
    with pytest.raises(BadReduction) as exc:
        reduce_mod_p(s, 7)
    assert exc.value.index == 2


def test_sigma_small():
    rep = sigma_check(40)
    assert rep.ok and rep.closed_form_ok
    assert rep.sigma_mod2.support() == [0, 1, 2, 4, 8, 16, 32]
    assert [int(c) for c in rep.sigma.coeffs[:4]] == [1, 3, 19971, -10560104]


def test_p_curvature_examples():
    # D - 1 has e^x as solution: never zero p-curvature
    assert p_curvature_numerator(OperatorOrderOne([1], [1]), 5) == [1]
    # D - 1/(2x): sqrt(x), zero p-curvature for odd p
    op = OperatorOrderOne([1], [0, 2])
    assert all(p_curvature_order_one(op, p) == "zero" for p in (3, 5, 7, 11))
    with pytest.raises(PoleCollision):
        p_curvature_order_one(op, 2)
    with pytest.raises(ValueError):
        p_curvature_order_one(op, 9)


def test_p_curvature_scan_for_truncated_F():
    res = p_curvature_scan(OperatorOrderOne.nome_operator([0, 1, -744, -393768]), primes_between(2, 101))
    assert [p for p in res["zero"] if p > 2] == load_fixture("pcurvature").payload
    assert res["nonzero"][:11] == load_fixture("pcurvature2").payload
    assert res["nonzero"][11:] == [83, 97]
    assert 2 in res["zero"]


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5), st.integers(1, 9))
def test_logarithmic_derivative_has_zero_p_curvature(tail, c0):
    u = [c0] + tail
    du = [k * u[k] for k in range(1, len(u))] or [0]
    op = OperatorOrderOne(du, u)
    for p in (3, 5, 7, 11, 13):
        if all(c % p == 0 for c in u):
            continue
        assert p_curvature_order_one(op, p) == "zero"


@given(st.fractions(min_value=Fraction(1, 40), max_value=10, max_denominator=40), st.booleans())
def test_radius_self_calibration(rho, negative):
    r = -rho if negative else rho
    # two poles, the nearer at r; the ratio c_n/c_(n+1) tends to r
    den = [1, -Fraction(1) / r]
    far = [1, -Fraction(1, 2) / r]
    s = expand_rational([1], [den[0] * far[0], den[0] * far[1] + den[1] * far[0], den[1] * far[1]], 200)
    est = radius_estimate(s).last_ratio
    assert math.isclose(est, float(r), rel_tol=1e-6)


def test_radius_insufficient():
    with pytest.raises(InsufficientTerms):
        radius_estimate(TruncatedSeries([0, 1, 2], 2))


def test_globally_bounded_probe():
    Q = nome_from_f(build_F("poly:1,-5,6", 40))
    assert globally_bounded_probe(Q).bounded
    g = expand_rational([0, 1], [1, Fraction(-1, 3)], 30)
    rep = globally_bounded_probe(g)
    assert rep.bounded and rep.rescale == 3
    log1p = TruncatedSeries([0] + [Fraction((-1) ** (n + 1), n) for n in range(1, 41)], 40)
    rep = globally_bounded_probe(log1p)
    assert not rep.bounded and rep.late_primes
    assert "late" in rep.summary()
