"""Arithmetic diagnostics: reductions mod p, the mod-2 sigma identity,
p-curvature of first-order operators, global boundedness and ratio tests."""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import BadReduction, GF, _is_prime
from .series import TruncatedSeries


class PoleCollision(ArithmeticError):
    pass


class InsufficientTerms(ValueError):
    pass


@dataclass
class ModPSeries:
    p: int
    coeffs: list
    K: int

    def as_series(self):
        return TruncatedSeries._raw(list(self.coeffs), self.K, GF(self.p))

    def support(self):
        return [k for k, c in enumerate(self.coeffs) if c]


def reduce_mod_p(f, p):
    out = []
    for k, c in enumerate(f.coeffs):
        c = Fraction(c)
        if c.denominator % p == 0:
            raise BadReduction(f"coefficient of x^{k} has {p} in its denominator", index=k)
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return ModPSeries(p, out, f.K)


# ------------------------------------------------------------------- sigma

def elliptic_family_at(a, K):
    """y(a, x) = X(a Q(x)) over the rationals, through x^K."""
    from .modular import elliptic_pair
    Q, X = elliptic_pair(K)
    return X.compose(Q.scale(Fraction(a)))


@dataclass
class SigmaReport:
    ok: bool
    K: int
    sigma: TruncatedSeries
    sigma_mod2: ModPSeries
    residual_support: list
    closed_form_ok: bool


def sigma_check(K, S=None):
    """sigma = (S - 3x)/(96 x) + 99/2 x + 1 with S = y(3, x); test sigma^2 - sigma + x = 0 mod 2."""
    if S is None:
        S = elliptic_family_at(3, K + 1)
    x = TruncatedSeries.x(K + 1)
    sigma = ((S - x.scale(3)).shift(-1).scale(Fraction(1, 96)) + x.truncate(K).scale(Fraction(99, 2)) + 1).truncate(K)
    s2 = reduce_mod_p(sigma, 2)
    ss = s2.as_series()
    X = TruncatedSeries.x(K, GF(2))
    resid = ss * ss - ss + X
    supp = [k for k, c in enumerate(resid.coeffs) if c]
    expected = {0, 1} | {2 ** k for k in range(1, K.bit_length() + 1) if 2 ** k <= K}
    closed = set(s2.support()) == expected
    return SigmaReport(not supp and closed, K, sigma, s2, supp, closed)


# ------------------------------------------------------------- p-curvature

def _pnorm(a, p):
    a = [v % p for v in a]
    while a and not a[-1]:
        a.pop()
    return a


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _pnorm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _pnorm(out, p)


def _pder(a, p):
    return _pnorm([k * a[k] for k in range(1, len(a))], p)


def _pscale(a, c, p):
    return _pnorm([c * v for v in a], p)


def _reduce_poly(poly, p):
    out = []
    for c in poly:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise PoleCollision(f"{p} divides a coefficient denominator")
        out.append(c.numerator * pow(c.denominator, -1, p))
    return _pnorm(out, p)


@dataclass
class OperatorOrderOne:
    """D - num/den with polynomial coefficient lists (low to high)."""
    num: list
    den: list

    @classmethod
    def nome_operator(cls, F):
        """F(x) D - 1, i.e. r = 1/F, from F's coefficient list."""
        return cls([1], list(F))


def p_curvature_numerator(op, p):
    """N_p with A_p = N_p / den^p, A_1 = r, A_(k+1) = A_k' + r A_k over F_p."""
    n = _reduce_poly(op.num, p)
    D = _reduce_poly(op.den, p)
    if not D:
        raise PoleCollision(f"denominator vanishes mod {p}")
    dD = _pder(D, p)
    N = n
    for k in range(1, p):
        N = _padd(_padd(_pmul(_pder(N, p), D, p), _pscale(_pmul(N, dD, p), -k, p), p), _pmul(n, N, p), p)
    return N


def p_curvature_order_one(op, p):
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return "zero" if not p_curvature_numerator(op, p) else "nonzero"


def p_curvature_scan(op, primes):
    zero, nonzero, skipped = [], [], []
    for p in primes:
        try:
            (zero if p_curvature_order_one(op, p) == "zero" else nonzero).append(p)
        except PoleCollision:
            skipped.append(p)
    return {"zero": zero, "nonzero": nonzero, "skipped": skipped}


def primes_between(lo, hi):
    return [p for p in range(max(lo, 2), hi + 1) if _is_prime(p)]


# ------------------------------------------------------------------ radius

@dataclass
class RadiusReport:
    estimate: float
    last_ratio: float
    window_mean: float
    trace: list = field(default_factory=list)


def radius_estimate(f, window=10):
    """Ratios c_n / c_(n+1) over the last window of nonzero coefficients."""
    idx = [k for k, c in enumerate(f.coeffs) if c]
    if len(idx) < window + 2:
        raise InsufficientTerms(f"need {window + 2} nonzero coefficients, have {len(idx)}")
    c = f.coeffs
    trace = []
    for n in idx[-(window + 1):-1]:
        if n + 1 > f.K or not c[n + 1]:
            continue
        trace.append((n, float(Fraction(c[n]) / Fraction(c[n + 1]))))
    if not trace:
        raise InsufficientTerms("no consecutive nonzero coefficients in the window")
    last = trace[-1][1]
    mean = sum(v for _, v in trace) / len(trace)
    return RadiusReport(last, last, mean, trace)


# ---------------------------------------------------------- global bounds

def _vp(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _small_factors(n, bound=10 ** 6):
    out = {}
    d = 2
    while d * d <= n and d <= bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass
class BoundednessReport:
    bounded: bool
    rescale: int
    primes: dict
    late_primes: list
    K: int

    def summary(self):
        if self.bounded:
            return f"integral after x -> {self.rescale} x through x^{self.K}"
        return ("unbounded-growth evidence: primes first appearing late "
                f"{self.late_primes}; slopes {self.primes}")


def globally_bounded_probe(f, K=None, rescale_bound=10 ** 12):
    """Look for the smallest integer c with f(c x) integral through x^K.

    A prime that first shows up in a denominator after the first half of the
    range, or a valuation slope that keeps rising, counts as evidence against
    global boundedness; it is evidence, not proof.
    """
    K = min(K or f.K, f.K)
    first_seen = {}
    slope = {}
    for n in range(1, K + 1):
        d = Fraction(f.coeffs[n]).denominator
        if d == 1:
            continue
        for p, e in _small_factors(d).items():
            first_seen.setdefault(p, n)
            slope[p] = max(slope.get(p, 0), Fraction(e, n))
    late = sorted(p for p, n in first_seen.items() if n > K // 2)
    c = 1
    for p, s in slope.items():
        c *= p ** math.ceil(s)
    bounded = not late and c <= rescale_bound
    if bounded:
        for n in range(1, K + 1):
            if (Fraction(f.coeffs[n]) * c ** n).denominator != 1:
                bounded = False
                break
    return BoundednessReport(bounded, c if bounded else 0,
                             {p: str(s) for p, s in sorted(slope.items())}, late, K)
