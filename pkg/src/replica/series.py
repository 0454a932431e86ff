"""Truncated power series over the exact rings of ``replica.exact``.

A ``TruncatedSeries`` with order K stores coefficients 0..K and claims
nothing about x^(K+1) and beyond. Every operation returns the largest order
it can guarantee from the orders and valuations of its operands.
"""

import json
import math
from fractions import Fraction

from .exact import (QQ, PrimeField, PolyRing, FracRing, CyclotomicField,
                    CyclotomicElem, ParamPolynomial, ParamRationalFunction,
                    MixedRings, ring_div, rational_str)


class SeriesError(ArithmeticError):
    pass


class DivisionValuation(SeriesError):
    pass


class PrecisionUnderflow(SeriesError):
    pass


class NonpositiveValuation(SeriesError):
    pass


class BadValuation(SeriesError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class IntegrationObstruction(SeriesError):
    pass


class ZeroDerivative(SeriesError):
    pass


class PoleAtOrigin(SeriesError):
    pass


class ValuationNotDivisible(SeriesError):
    pass


class NonUnitLeading(SeriesError):
    pass


def _red(ring, vals):
    if isinstance(ring, PrimeField):
        p = ring.p
        return [v % p for v in vals]
    return vals


def _scal(ring, c, vals):
    if isinstance(ring, PrimeField):
        p = ring.p
        return [c * v % p for v in vals]
    return [c * v if v else v for v in vals]


def _eff(v, K):
    return K + 1 if v == math.inf else v


class TruncatedSeries:
    __slots__ = ("ring", "coeffs", "K")

    def __init__(self, coeffs, K=None, ring=QQ):
        if K is None:
            K = len(coeffs) - 1
        if K < 0:
            raise PrecisionUnderflow(f"order {K} < 0")
        self.ring = ring
        c = [ring(v) for v in coeffs[:K + 1]]
        if len(c) < K + 1:
            c.extend([ring.zero] * (K + 1 - len(c)))
        self.coeffs = c
        self.K = K

    @classmethod
    def _raw(cls, coeffs, K, ring):
        s = cls.__new__(cls)
        s.ring = ring
        s.coeffs = coeffs
        s.K = K
        return s

    # -- constructors
    @classmethod
    def x(cls, K, ring=QQ):
        return cls([ring.zero, ring.one], K, ring)

    @classmethod
    def const(cls, c, K, ring=QQ):
        return cls([c], K, ring)

    @classmethod
    def from_poly(cls, coeffs, K, ring=QQ):
        """Exact polynomial (low to high) viewed to order K."""
        return cls(list(coeffs), K, ring)

    @classmethod
    def from_dict(cls, d, K, ring=QQ):
        c = [ring.zero] * (K + 1)
        for k, v in d.items():
            if k <= K:
                c[k] = ring(v)
        return cls._raw(c, K, ring)

    # -- basic queries
    @property
    def valuation(self):
        z = self.ring.is_zero
        for i, c in enumerate(self.coeffs):
            if not z(c):
                return i
        return math.inf

    def __getitem__(self, k):
        if k < 0:
            return self.ring.zero
        if k > self.K:
            raise IndexError(f"coefficient {k} beyond order {self.K}")
        return self.coeffs[k]

    def __len__(self):
        return self.K + 1

    def truncate(self, K):
        if K > self.K:
            raise PrecisionUnderflow(f"cannot extend order {self.K} to {K}")
        return TruncatedSeries._raw(self.coeffs[:K + 1], K, self.ring)

    def pad(self, K):
        """Treat the stored coefficients as exact and extend with zeros."""
        if K <= self.K:
            return self.truncate(K)
        return TruncatedSeries._raw(self.coeffs + [self.ring.zero] * (K - self.K), K, self.ring)

    def change_ring(self, ring, fn=None):
        fn = fn or ring
        return TruncatedSeries._raw([fn(c) for c in self.coeffs], self.K, ring)

    def map(self, fn, ring=None):
        return TruncatedSeries._raw([fn(c) for c in self.coeffs], self.K, ring or self.ring)

    def _same(self, o):
        if not isinstance(o, TruncatedSeries):
            return TruncatedSeries.const(o, self.K, self.ring)
        if o.ring != self.ring:
            raise MixedRings(f"{self.ring} vs {o.ring}")
        return o

    def is_zero(self):
        return self.valuation == math.inf

    def __eq__(self, o):
        """Agreement on the common order."""
        if isinstance(o, TruncatedSeries):
            n = min(self.K, o.K) + 1
            return all(a == b for a, b in zip(self.coeffs[:n], o.coeffs[:n]))
        if isinstance(o, (int, Fraction)):
            return self == TruncatedSeries.const(o, self.K, self.ring)
        return NotImplemented

    __hash__ = None

    # -- arithmetic
    def __add__(self, o):
        o = self._same(o)
        K = min(self.K, o.K)
        c = [x + y for x, y in zip(self.coeffs[:K + 1], o.coeffs[:K + 1])]
        return TruncatedSeries._raw(_red(self.ring, c), K, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(_red(self.ring, [-x for x in self.coeffs]), self.K, self.ring)

    def __sub__(self, o):
        return self + (-self._same(o))

    def __rsub__(self, o):
        return self._same(o) - self

    def scale(self, c):
        return TruncatedSeries._raw(_scal(self.ring, self.ring(c), self.coeffs), self.K, self.ring)

    def __mul__(self, o):
        if not isinstance(o, TruncatedSeries):
            return self.scale(o)
        o = self._same(o)
        vf, vg = _eff(self.valuation, self.K), _eff(o.valuation, o.K)
        K = min(self.K + vg, o.K + vf)
        return TruncatedSeries._raw(self.ring.conv(self.coeffs, o.coeffs, K + 1), K, self.ring)

    def __rmul__(self, o):
        return self.scale(o)

    def square(self):
        return self * self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = TruncatedSeries.const(self.ring.one, self.K, self.ring)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def shift(self, k):
        """Multiply by x^k (k >= 0) or divide by x^-k when exact."""
        z = self.ring.zero
        if k >= 0:
            return TruncatedSeries._raw([z] * k + self.coeffs, self.K + k, self.ring)
        k = -k
        if self.valuation < k:
            raise DivisionValuation(f"cannot divide by x^{k}: valuation {self.valuation}")
        if self.K - k < 0:
            raise PrecisionUnderflow("shift leaves no known coefficients")
        return TruncatedSeries._raw(self.coeffs[k:], self.K - k, self.ring)

    def inverse(self):
        """1/f for f with invertible constant term (Newton iteration)."""
        R = self.ring
        c0 = self.coeffs[0]
        if R.is_zero(c0):
            raise DivisionValuation("constant term is zero")
        try:
            h = [ring_div(R, R.one, c0)]
        except Exception as exc:
            raise NonUnitConstantTerm(str(exc)) from exc
        prec = 1
        K = self.K
        two = R(2)
        while prec < K + 1:
            prec = min(2 * prec, K + 1)
            gh = R.conv(self.coeffs[:prec], h, prec)
            t = _red(R, [-v for v in gh])
            t[0] = t[0] + two
            h = R.conv(h, _red(R, t), prec)
        return TruncatedSeries._raw(_red(R, h), K, R)

    def __truediv__(self, o):
        if not isinstance(o, TruncatedSeries):
            R = self.ring
            c = R(o)
            return TruncatedSeries._raw(_red(R, [ring_div(R, v, c) for v in self.coeffs]), self.K, R)
        o = self._same(o)
        vg = o.valuation
        if vg == math.inf:
            raise DivisionValuation("division by a series with no known nonzero term")
        vf = _eff(self.valuation, self.K)
        if vf < vg:
            raise DivisionValuation(f"valuation {vf} of numerator below {vg} of divisor")
        K = min(self.K - vg, o.K - 2 * vg + vf)
        if K < 0:
            raise PrecisionUnderflow("quotient has no guaranteed coefficients")
        num = self.shift(-vg) if vg else self
        den = o.shift(-vg) if vg else o
        q = num * den.inverse()
        return q.truncate(K)

    def __rtruediv__(self, o):
        return self._same(o) / self

    # -- calculus
    def derive(self):
        R = self.ring
        if self.K == 0:
            return TruncatedSeries._raw([R.zero], 0, R)
        c = [self.coeffs[k] * k for k in range(1, self.K + 1)]
        return TruncatedSeries._raw(_red(R, c), self.K - 1, R)

    def integrate(self):
        """Antiderivative with constant 0; raises when k+1 is not invertible."""
        R = self.ring
        c = [R.zero]
        for k, v in enumerate(self.coeffs):
            if R.is_zero(v):
                c.append(R.zero)
                continue
            if isinstance(R, PrimeField) and (k + 1) % R.p == 0:
                raise IntegrationObstruction(f"x^{k} has no antiderivative mod {R.p}")
            c.append(ring_div(R, v, R(k + 1)))
        return TruncatedSeries._raw(_red(R, c), self.K + 1, R)

    def log(self):
        R = self.ring
        if self.coeffs[0] != R.one:
            raise NonUnitConstantTerm("log needs constant term 1")
        if self.K == 0:
            return TruncatedSeries._raw([R.zero], 0, R)
        return (self.derive() / self.truncate(self.K - 1)).integrate()

    def exp(self):
        R = self.ring
        if not R.is_zero(self.coeffs[0]):
            raise NonUnitConstantTerm("exp needs constant term 0")
        K = self.K
        f = self.coeffs
        g = [R.one] + [R.zero] * K
        kf = [f[k] * k for k in range(K + 1)]
        for n in range(1, K + 1):
            s = R.zero
            for k in range(1, n + 1):
                if kf[k]:
                    s = s + kf[k] * g[n - k]
            g[n] = ring_div(R, s, R(n))
            if isinstance(R, PrimeField):
                g[n] %= R.p
        return TruncatedSeries._raw(g, K, R)

    def pow_rational(self, r):
        """f^r for constant term 1 (or any invertible constant when r is an integer)."""
        R = self.ring
        r = Fraction(r)
        f = self.coeffs
        f0 = f[0]
        if f0 != R.one:
            if r.denominator == 1 and not R.is_zero(f0):
                return self ** int(r)
            raise NonUnitConstantTerm("fractional power needs constant term 1")
        K = self.K
        g = [R.one] + [R.zero] * K
        rr = R(r)
        for n in range(1, K + 1):
            s = R.zero
            for k in range(1, n + 1):
                if f[k]:
                    s = s + (rr * k - (n - k)) * f[k] * g[n - k]
            g[n] = ring_div(R, s, R(n))
            if isinstance(R, PrimeField):
                g[n] %= R.p
        return TruncatedSeries._raw(g, K, R)

    def sqrt(self):
        return self.pow_rational(Fraction(1, 2))

    # -- composition
    def compose(self, g):
        """f(g(x)) by baby-step/giant-step evaluation; needs valuation(g) >= 1."""
        g = self._same(g)
        vg = g.valuation
        if vg == math.inf:
            return TruncatedSeries.const(self.coeffs[0], g.K, self.ring)
        if vg < 1:
            raise NonpositiveValuation("inner series must vanish at 0")
        vf = _eff(self.valuation, self.K)
        K = min(vg * (self.K + 1) - 1, g.K + vg * (max(vf, 1) - 1))
        R = self.ring
        n = K + 1
        nterms = min(self.K, K // vg) + 1
        f = self.coeffs[:nterms]
        gc = g.coeffs[:n] + [R.zero] * max(0, n - len(g.coeffs))
        m = max(1, math.isqrt(nterms))
        # baby steps g^0..g^m
        pw = [[R.one] + [R.zero] * (n - 1), gc]
        for _ in range(2, m + 1):
            pw.append(R.conv(pw[-1], gc, n))
        gm = pw[m]
        acc = None
        for blk in range((nterms - 1) // m, -1, -1):
            part = [R.zero] * n
            for j in range(m):
                idx = blk * m + j
                if idx >= nterms:
                    break
                c = f[idx]
                if R.is_zero(c):
                    continue
                pj = pw[j]
                for k in range(n):
                    if pj[k]:
                        part[k] = part[k] + c * pj[k]
            if acc is None:
                acc = part
            else:
                acc = R.conv(acc, gm, n)
                acc = [x + y for x, y in zip(acc, part)]
            acc = _red(R, acc)
        return TruncatedSeries._raw(acc, K, R)

    def __call__(self, g):
        return self.compose(g)

    def revert(self):
        """Compositional inverse of f = c1 x + ... by Newton iteration."""
        R = self.ring
        if self.valuation != 1:
            raise BadValuation(f"reversion needs valuation 1, got {self.valuation}")
        K = self.K
        c1 = self.coeffs[1]
        try:
            inv1 = ring_div(R, R.one, c1)
        except Exception as exc:
            raise BadValuation(f"linear coefficient not invertible: {exc}") from exc
        g = TruncatedSeries._raw([R.zero, inv1], 1, R)
        fd = self.derive()
        prec = 1
        while prec < K:
            prec = min(2 * prec, K)
            gp = g.pad(prec)
            fg = self.truncate(prec).compose(gp)
            resid = fg - TruncatedSeries.x(prec, R)
            dfg = fd.truncate(prec - 1).compose(gp.truncate(prec - 1))
            corr = resid.truncate(prec) / dfg.pad(prec)
            g = (gp - corr).truncate(prec)
        return g.pad(K) if g.K < K else g.truncate(K)

    # -- misc
    def nth_root_split(self, N):
        """g with g^N = f, g = x + ..., for f = x^N + ...."""
        v = self.valuation
        if v == math.inf or v % N:
            raise ValuationNotDivisible(f"valuation {v} not divisible by {N}")
        R = self.ring
        if self.coeffs[v] != R.one:
            raise NonUnitLeading("leading coefficient must be 1")
        body = self.shift(-v)
        root = body.pow_rational(Fraction(1, N))
        return root.shift(v // N)

    def schwarzian(self):
        return LaurentSeries.from_series(self).schwarzian()

    def poly_eval(self, assignment):
        return self.map(lambda c: c.eval(assignment) if hasattr(c, "eval") else c, QQ)

    def to_list(self):
        return list(self.coeffs)

    def to_json(self, var="x"):
        if self.ring != QQ:
            raise MixedRings("only rational series serialize to JSON")
        return {"var": var, "trunc": self.K,
                "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls([Fraction(int(n), int(d)) for n, d in obj["coeffs"]], obj["trunc"], QQ)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                s = str(c)
                if k:
                    mono = "x" if k == 1 else f"x^{k}"
                    if s in ("1", "-1"):
                        s = s[:-1] + mono
                    else:
                        s = (f"({s})" if (" " in s or "/" in s) else s) + "*" + mono
                terms.append(s)
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(x^{self.K + 1})"


def expand_rational(num, den, K, ring=QQ):
    """Taylor expansion of num/den (coefficient lists, low to high) to order K."""
    num = list(num)
    den = list(den)
    z = ring.is_zero
    vn = next((i for i, c in enumerate(num) if not z(ring(c))), None)
    vd = next((i for i, c in enumerate(den) if not z(ring(c))), None)
    if vd is None:
        raise ZeroDivisionError("zero denominator")
    if vn is None:
        return TruncatedSeries([], K, ring)
    if vd > vn:
        raise PoleAtOrigin(f"x^{vd - vn} pole at the origin")
    s = min(vd, vn)
    num, den = num[s:], den[s:]
    n = TruncatedSeries(num, K, ring)
    d = TruncatedSeries(den, K, ring)
    return (n * d.inverse()).truncate(K)


def series_from(obj, K, ring=QQ):
    if isinstance(obj, TruncatedSeries):
        return obj
    return TruncatedSeries(list(obj), K, ring)


class LaurentSeries:
    """x^shift times a power series; only used for principal parts."""

    __slots__ = ("shift", "body")

    def __init__(self, body, shift=0):
        self.body = body
        self.shift = shift

    @classmethod
    def from_series(cls, s):
        return cls(s, 0)

    @property
    def ring(self):
        return self.body.ring

    @property
    def order(self):
        """Absolute exponent of the last known coefficient."""
        return self.shift + self.body.K

    def normalized(self):
        v = self.body.valuation
        if v == math.inf or v == 0:
            return self
        return LaurentSeries(self.body.shift(-v), self.shift + v)

    @property
    def valuation(self):
        v = self.body.valuation
        return v if v == math.inf else v + self.shift

    def coeff(self, e):
        k = e - self.shift
        if k < 0:
            return self.body.ring.zero
        return self.body[k]

    def _align(self, o):
        if not isinstance(o, LaurentSeries):
            if isinstance(o, TruncatedSeries):
                o = LaurentSeries(o, 0)
            else:
                o = LaurentSeries(TruncatedSeries.const(o, self.body.K, self.ring), 0)
        s = min(self.shift, o.shift)
        a = self.body.shift(self.shift - s)
        b = o.body.shift(o.shift - s)
        return a, b, s

    def __add__(self, o):
        a, b, s = self._align(o)
        return LaurentSeries(a + b, s)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(-self.body, self.shift)

    def __sub__(self, o):
        a, b, s = self._align(o)
        return LaurentSeries(a - b, s)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, LaurentSeries):
            return LaurentSeries(self.body * o.body, self.shift + o.shift)
        if isinstance(o, TruncatedSeries):
            return LaurentSeries(self.body * o, self.shift)
        return LaurentSeries(self.body.scale(o), self.shift)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if not isinstance(o, (LaurentSeries, TruncatedSeries)):
            return LaurentSeries(self.body / o, self.shift)
        if isinstance(o, TruncatedSeries):
            o = LaurentSeries(o, 0)
        a = self.normalized()
        b = o.normalized()
        if b.body.valuation == math.inf:
            raise DivisionValuation("division by a zero Laurent series")
        return LaurentSeries(a.body / b.body, a.shift - b.shift)

    def __pow__(self, n):
        if n < 0:
            return LaurentSeries(TruncatedSeries.const(self.ring.one, self.body.K, self.ring)) / (self ** (-n))
        return LaurentSeries(self.body ** n, self.shift * n)

    def derive(self):
        R = self.ring
        b = self.body
        s = self.shift
        c = [b.coeffs[k] * (k + s) for k in range(b.K + 1)]
        return LaurentSeries(TruncatedSeries._raw(_red(R, c), b.K, R), s - 1)

    def schwarzian(self):
        d1 = self.derive()
        if d1.body.valuation == math.inf:
            raise ZeroDerivative("derivative vanishes to the known order")
        L = d1.derive() / d1
        return L.derive() - L * L * Fraction(1, 2)

    def truncate_abs(self, order):
        return LaurentSeries(self.body.truncate(order - self.shift), self.shift)

    def to_series(self):
        v = self.body.valuation
        if self.shift < 0 and v != math.inf and v + self.shift < 0:
            raise PoleAtOrigin("Laurent series has a principal part")
        if self.shift >= 0:
            return self.body.shift(self.shift)
        return self.body.shift(self.shift)

    def is_zero(self):
        return self.body.valuation == math.inf

    def terms(self):
        return {k + self.shift: c for k, c in enumerate(self.body.coeffs) if not self.ring.is_zero(c)}

    def __repr__(self):
        return f"x^{self.shift}*({self.body!r})"


class PuiseuxBranch:
    """Series in u with u = omega * x^(1/N)."""

    __slots__ = ("N", "body")

    def __init__(self, N, body):
        if body.valuation < 1:
            raise BadValuation("Puiseux body must vanish at u = 0")
        self.N = N
        self.body = body

    def displayed(self, omega=None):
        """List of (k, coefficient of x^(k/N)) with omega^k folded in when omega is given."""
        out = []
        for k, c in enumerate(self.body.coeffs):
            if k == 0 or not c:
                continue
            out.append((k, c if omega is None else c * omega ** k))
        return out

    def to_json(self, var="u"):
        d = self.body.to_json(var)
        d["ram"] = self.N
        d["omega_order"] = self.N
        return d

    def __repr__(self):
        return f"PuiseuxBranch(N={self.N}, u={self.body!r})"


def rational_terms(s):
    return [rational_str(c) for c in s.coeffs]
