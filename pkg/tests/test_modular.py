from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from replica.exact import QQ, CyclotomicField
from replica.fixtures import diff_series, load_fixture
from replica.modular import (BivariatePolynomial, ExpressionError, branch_composite, branch_product,
                             catalog_entry, correspondence_by_composition, elliptic_pair, gamma4_by_resultant,
                             landen_check, parametrization_to_series, puiseux_branch, root_product_series,
                             safe_eval, self_compose, sylvester_resultant, verify_curve)
from replica.series import TruncatedSeries
from replica.special import build_F, nome_from_f


def test_safe_eval_rejects_code():
    assert safe_eval("2**3 - 1/2", {}) == Fraction(15, 2)
    for bad in ("__import__('os')", "x.y", "[1]", "f(2)"):
        with pytest.raises(ExpressionError):
            safe_eval(bad, {"x": 1, "f": abs})


def test_bivariate_parse_and_symmetry():
    g = BivariatePolynomial.parse("x*y - (x+y)*(x**2+y**2)")
    assert g.is_symmetric()
    assert not BivariatePolynomial.parse("x - 2*y").is_symmetric()
    assert g.degree("y") == 3


@pytest.mark.parametrize("N", [2, 3, 5, 7, 13])
def test_catalog_parametrizations_give_correspondences(N):
    K = N + 8
    _, _, yx = parametrization_to_series(catalog_entry(N), K)
    assert (yx - correspondence_by_composition(N, K)).is_zero()


@pytest.mark.parametrize("N,fid", [(2, "modularequa"), (3, "modularequa3")])
def test_modular_curves(N, fid):
    g = load_fixture(fid).payload
    assert g.is_symmetric()
    K = 20
    yN = correspondence_by_composition(N, K)
    assert verify_curve(g, TruncatedSeries.x(K), yN).is_zero()


def test_resultant_against_sympy():
    from replica.exact import ParamPolynomial
    x, y, z = (ParamPolynomial.var(v).embed(("x", "y", "z")) for v in "xyz")
    P = z * z - x * z + y
    Q = z ** 3 - y
    X, Y, Z = sympy.symbols("x y z")
    ref = sympy.Poly(sympy.resultant(Z**2 - X * Z + Y, Z**3 - Y, Z), X, Y)
    got = sylvester_resultant(P, Q, "z")
    assert len(got.terms) == len(ref.terms())
    for (i, j), c in ref.terms():
        assert got.embed(("x", "y")).coeff((i, j)) == int(c)


def test_gamma4():
    g4, res, mult = gamma4_by_resultant()
    assert mult == 3
    assert g4.is_symmetric() and g4.degree("y") == 6
    K = 12
    x = TruncatedSeries.x(K)
    assert verify_curve(g4, x, correspondence_by_composition(4, K)).is_zero()
    prod = root_product_series(g4, K)
    assert prod.valuation == 6


def test_branches():
    y2 = correspondence_by_composition(2, 12)
    br = puiseux_branch(y2, 2)
    assert diff_series(br, load_fixture("modularequasol2"))
    inv = branch_composite(2, -1, 10)
    assert (inv.compose(inv) - TruncatedSeries.x(10, inv.ring)).is_zero()
    R = CyclotomicField(3)
    w = branch_composite(3, R.omega(1), 10)
    assert (self_compose(w, 3) - TruncatedSeries.x(10, R)).is_zero()
    assert diff_series(w, load_fixture("mod1sur3omega"))


def test_branch_product_is_rational():
    y2 = correspondence_by_composition(2, 12)
    p = branch_product(y2, 2)
    assert p.ring == QQ and p.valuation == 1


def test_landen():
    assert landen_check(20).is_zero()


def test_elliptic_pair_is_inverse():
    Q, X = elliptic_pair(30)
    assert (Q.compose(X) - TruncatedSeries.x(30)).is_zero()


def _y(Q, X, N):
    K = Q.K
    return X.compose((Q ** N).truncate(K))


@given(st.integers(-1000, 1000), st.integers(-10 ** 5, 10 ** 5), st.integers(-10 ** 6, 10 ** 6))
def test_correspondences_commute(c2, c3, c4):
    K = 14
    Q = nome_from_f(build_F(f"poly:1,{c2},{c3},{c4}", K))
    X = Q.revert()
    y2, y3, y6 = _y(Q, X, 2), _y(Q, X, 3), _y(Q, X, 6)
    assert (y2.compose(y3) - y6).truncate(K).is_zero()
    assert (y3.compose(y2) - y6).truncate(K).is_zero()
