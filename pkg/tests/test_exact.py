from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from replica.exact import (GF, QQ, BadReduction, CyclotomicElem, CyclotomicField, MixedRings,
                           NonUnitDivisor, ParamPolynomial, PolyRing, cyclotomic_poly, euler_phi,
                           parse_rational, rational_mod_p, rational_str)

small = st.integers(-50, 50)
rat = st.fractions(min_value=-20, max_value=20, max_denominator=30)


def test_parse_and_print_rationals():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(" 7 ") == 7
    assert rational_str(Fraction(10, 5)) == "2"
    assert rational_str(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("")
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_prime_field():
    a = rational_mod_p(Fraction(1, 3), 7)
    assert a * 3 == 1
    assert a.inv().value == 3
    assert (a ** -2) * a * a == 1
    with pytest.raises(BadReduction):
        rational_mod_p(Fraction(1, 14), 7)
    with pytest.raises(ZeroDivisionError):
        (a * 0).inv()
    with pytest.raises(ValueError):
        GF(9)


def test_prime_field_mixing():
    with pytest.raises(MixedRings):
        rational_mod_p(1, 5) + rational_mod_p(1, 7)


def test_param_polynomial_algebra():
    a, b = ParamPolynomial.var("a"), ParamPolynomial.var("b")
    p = (a + b) ** 2
    assert p == a * a + 2 * a * b + b * b
    assert p.subs({"b": 1}) == a * a + 2 * a + 1
    assert p.eval({"a": 2, "b": Fraction(1, 2)}) == Fraction(25, 4)
    assert p.diff("a") == 2 * a + 2 * b
    q, r = (a * a - b * b).divmod_exact(a - b)
    assert not r and q == a + b
    assert p.degree("a") == 2 and sorted(p.used_vars()) == ["a", "b"]


def test_param_polynomial_division_needs_unit():
    a = ParamPolynomial.var("a")
    with pytest.raises(NonUnitDivisor):
        (a + 1) / a
    assert (4 * a) / 2 == 2 * a


def test_param_polynomial_matches_sympy():
    a, b = ParamPolynomial.var("a"), ParamPolynomial.var("b")
    A, B = sympy.symbols("a b")
    ours = (3 * a - b) ** 3 * (a + Fraction(1, 2))
    ref = sympy.Poly(sympy.expand((3 * A - B) ** 3 * (A + sympy.Rational(1, 2))), A, B)
    for (i, j), c in ref.terms():
        assert ours.embed(("a", "b")).coeff((i, j)) == Fraction(int(c.p), int(c.q))
    assert len(ours.terms) == len(ref.terms())


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 25])
def test_cyclotomic_polynomials_against_sympy(N):
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.cyclotomic_poly(N, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(N)) == [int(c) for c in ref]
    assert euler_phi(N) == sympy.totient(N)


def test_roots_of_unity():
    R = CyclotomicField(3)
    w = R.omega(1)
    assert w ** 3 == R.one
    assert (R.one + w + w * w).is_zero()
    assert w.inv() == w * w
    i = CyclotomicElem.omega(4)
    assert i * i == CyclotomicElem.scalar(4, -1)


cyclo = st.tuples(st.sampled_from([3, 4, 5, 8, 12]), st.lists(rat, min_size=1, max_size=6),
                  st.lists(rat, min_size=1, max_size=6))


@given(cyclo)
def test_cyclotomic_field_axioms(data):
    N, u, v = data
    a, b = CyclotomicElem(N, u), CyclotomicElem(N, v)
    assert a * b == b * a
    assert (a + b) * b == a * b + b * b
    if not b.is_zero():
        assert (a * b) * b.inv() == a
        assert a / b * b == a


@given(st.lists(small, max_size=30), st.lists(small, max_size=30), st.integers(1, 40))
def test_rational_convolution_matches_definition(u, v, n):
    a = [Fraction(x, 3) for x in u]
    b = [Fraction(x, 5) for x in v]
    want = [sum((a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b)), Fraction(0))
            for k in range(n)]
    assert QQ.conv(a, b, n) == want


def test_poly_ring_coercion():
    R = PolyRing(("a",))
    assert R(3) == ParamPolynomial.const(3, ("a",))
    with pytest.raises(MixedRings):
        R(ParamPolynomial.var("b"))
    assert R.extend("b").vars == ("a", "b")
    assert QQ(ParamPolynomial.const(5)) == 5
