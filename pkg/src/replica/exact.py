"""Exact coefficient rings.

Rationals are ``fractions.Fraction``. On top of that live polynomials and
quotients in named parameters, prime fields and cyclotomic residues, plus
small ring descriptors that the series code uses to pick a convolution
kernel.
"""

from fractions import Fraction
from math import gcd

from . import kernels

Rational = Fraction


class ExactArithError(ArithmeticError):
    pass


class NonUnitDivisor(ExactArithError):
    pass


class MixedRings(TypeError):
    pass


class BadReduction(ExactArithError):
    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class MissingAssignment(KeyError):
    pass


def _lcm(a, b):
    return a // gcd(a, b) * b


def parse_rational(text):
    """'p/q', 'p' or an int/Fraction -> Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not s:
        raise ValueError("empty rational")
    return Fraction(s)


def rational_str(r):
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


# ---------------------------------------------------------------- prime fields

def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeFieldElem:
    __slots__ = ("p", "value")

    def __init__(self, value, p):
        self.p = p
        self.value = value % p

    def _other(self, o):
        if isinstance(o, PrimeFieldElem):
            if o.p != self.p:
                raise MixedRings(f"F_{self.p} vs F_{o.p}")
            return o.value
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction):
            return rational_mod_p(o, self.p).value
        raise MixedRings(f"cannot combine F_{self.p} with {type(o).__name__}")

    def __add__(self, o):
        return PrimeFieldElem(self.value + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return PrimeFieldElem(self.value - self._other(o), self.p)

    def __rsub__(self, o):
        return PrimeFieldElem(self._other(o) - self.value, self.p)

    def __mul__(self, o):
        return PrimeFieldElem(self.value * self._other(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.p)

    def inv(self):
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, o):
        return self * PrimeFieldElem(self._other(o), self.p).inv()

    def __rtruediv__(self, o):
        return PrimeFieldElem(self._other(o), self.p) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return PrimeFieldElem(pow(self.value, n, self.p), self.p)

    def __eq__(self, o):
        try:
            return self.value == self._other(o)
        except MixedRings:
            return False

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def rational_mod_p(r, p):
    r = Fraction(r)
    if r.denominator % p == 0:
        raise BadReduction(f"{p} divides the denominator of {r}")
    return PrimeFieldElem(r.numerator * pow(r.denominator, -1, p), p)


# ---------------------------------------------------------- param polynomials

def _coerce_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise MixedRings(f"not a rational scalar: {type(c).__name__}")


class ParamPolynomial:
    """Sparse polynomial with rational coefficients in named parameters.

    Operands over different variable lists are merged onto the union, so
    ``a*b + a`` just works. Terms are stored against ``self.vars``.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None):
        self.vars = tuple(vars)
        t = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                c = _coerce_scalar(c)
                if c:
                    t[e] = t.get(e, 0) + c
                    if not t[e]:
                        del t[e]
        self.terms = t

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def var(cls, name):
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def const(cls, c, vars=()):
        c = _coerce_scalar(c)
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    # -- variable bookkeeping
    def embed(self, vars):
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v not in vars:
                if any(e[self.vars.index(v)] for e in self.terms):
                    raise ValueError(f"variable {v} missing from target")
                idx.append(None)
            else:
                idx.append(vars.index(v))
        out = {}
        n = len(vars)
        for e, c in self.terms.items():
            ne = [0] * n
            for k, ek in enumerate(e):
                if ek:
                    ne[idx[k]] = ek
            out[tuple(ne)] = c
        return ParamPolynomial._raw(vars, out)

    def _align(self, other):
        if isinstance(other, ParamPolynomial):
            if other.vars == self.vars:
                return self, other
            vs = list(self.vars)
            for v in other.vars:
                if v not in vs:
                    vs.append(v)
            return self.embed(vs), other.embed(vs)
        if isinstance(other, (int, Fraction)):
            return self, ParamPolynomial.const(other, self.vars)
        return NotImplemented, NotImplemented

    def rename(self, mapping):
        return ParamPolynomial._raw(tuple(mapping.get(v, v) for v in self.vars), dict(self.terms))

    # -- queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        for c in self.terms.values():
            return c
        return Fraction(0)

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        k = self.vars.index(var)
        return max(e[k] for e in self.terms)

    def used_vars(self):
        return tuple(v for k, v in enumerate(self.vars) if any(e[k] for e in self.terms))

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    # -- arithmetic
    def __add__(self, o):
        a, b = self._align(o)
        if a is NotImplemented:
            return NotImplemented
        t = dict(a.terms)
        for e, c in b.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return ParamPolynomial._raw(a.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return ParamPolynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        a, b = self._align(o)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            if not o:
                return ParamPolynomial._raw(self.vars, {})
            return ParamPolynomial._raw(self.vars, {e: c * o for e, c in self.terms.items()})
        a, b = self._align(o)
        if a is NotImplemented:
            return NotImplemented
        t = {}
        get = t.get
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t[e] = get(e, 0) + c1 * c2
        return ParamPolynomial._raw(a.vars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int) and self.is_constant() and self:
                return ParamPolynomial.const(self.constant_value() ** n, self.vars)
            raise NonUnitDivisor("negative power of a non-constant polynomial")
        r = ParamPolynomial.const(1, self.vars)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def divmod_exact(self, d):
        """Multivariate division by d (lex order). Returns (q, r)."""
        a, b = self._align(d)
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = b.leading_term()
        q = {}
        r = dict(a.terms)
        rem = {}
        bt = list(b.terms.items())
        while r:
            e = max(r)
            c = r[e]
            if all(x >= y for x, y in zip(e, le)):
                f = c / lc
                qe = tuple(x - y for x, y in zip(e, le))
                q[qe] = q.get(qe, 0) + f
                for e2, c2 in bt:
                    k = tuple(x + y for x, y in zip(qe, e2))
                    v = r.get(k, 0) - f * c2
                    if v:
                        r[k] = v
                    else:
                        r.pop(k, None)
            else:
                rem[e] = c
                del r[e]
        return (ParamPolynomial._raw(a.vars, {e: c for e, c in q.items() if c}),
                ParamPolynomial._raw(a.vars, rem))

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            if not o:
                raise ZeroDivisionError("division by zero")
            return ParamPolynomial._raw(self.vars, {e: c / o for e, c in self.terms.items()})
        if isinstance(o, ParamPolynomial):
            if o.is_constant():
                return self / o.constant_value()
            q, r = self.divmod_exact(o)
            if r.terms:
                raise NonUnitDivisor("polynomial division is not exact")
            return q
        return NotImplemented

    def __rtruediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return ParamPolynomial.const(o, self.vars) / self
        return NotImplemented

    def inv(self):
        return ParamPolynomial.const(1, self.vars) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            if not o:
                return not self.terms
            return self.is_constant() and self.constant_value() == o
        if not isinstance(o, ParamPolynomial):
            return NotImplemented
        a, b = self._align(o)
        return a.terms == b.terms

    def __hash__(self):
        used = self.used_vars()
        p = self.embed(tuple(sorted(used))) if set(used) == set(self.vars) else self._strip()
        if not used:
            return hash(self.constant_value())
        return hash(frozenset(p.terms.items()))

    def _strip(self):
        used = tuple(sorted(self.used_vars()))
        keep = [self.vars.index(v) for v in used]
        return ParamPolynomial._raw(used, {tuple(e[k] for k in keep): c for e, c in self.terms.items()})

    # -- evaluation and calculus
    def eval(self, assignment):
        for v in self.used_vars():
            if v not in assignment:
                raise MissingAssignment(v)
        total = Fraction(0)
        vals = [Fraction(assignment[v]) if v in assignment else None for v in self.vars]
        for e, c in self.terms.items():
            t = c
            for k, ek in enumerate(e):
                if ek:
                    t *= vals[k] ** ek
            total += t
        return total

    def subs(self, mapping):
        """Substitute ring values (polynomials, rationals, other ring elements)."""
        out = None
        powcache = {}
        for e, c in self.terms.items():
            t = c
            rest = [0] * len(self.vars)
            for k, ek in enumerate(e):
                v = self.vars[k]
                if ek and v in mapping:
                    key = (v, ek)
                    if key not in powcache:
                        powcache[key] = mapping[v] ** ek
                    t = powcache[key] * t
                else:
                    rest[k] = ek
            if any(rest):
                t = ParamPolynomial._raw(self.vars, {tuple(rest): Fraction(1)}) * t
            out = t if out is None else out + t
        if out is None:
            return ParamPolynomial._raw(self.vars, {})
        return out

    def diff(self, var):
        if var not in self.vars:
            return ParamPolynomial._raw(self.vars, {})
        k = self.vars.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                t[tuple(ne)] = c * e[k]
        return ParamPolynomial._raw(self.vars, t)

    def content(self):
        """Positive rational c with self/c integral and primitive."""
        if not self.terms:
            return Fraction(1)
        den = 1
        for c in self.terms.values():
            den = _lcm(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, c.numerator * (den // c.denominator))
        return Fraction(g, den)

    def to_terms(self):
        return [{"exps": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()]

    @classmethod
    def from_terms(cls, vars, items):
        return cls(vars, {tuple(it["exps"]): Fraction(int(it["num"]), int(it["den"])) for it in items})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            if mono:
                if c == 1:
                    s = mono
                elif c == -1:
                    s = "-" + mono
                else:
                    s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    __repr__ = __str__


def poly_eval(p, assignment):
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    return p.eval(assignment)


class ParamRationalFunction:
    """Quotient of ParamPolynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num, den=1):
        if not isinstance(num, ParamPolynomial):
            num = ParamPolynomial.const(num)
        if not isinstance(den, ParamPolynomial):
            den = ParamPolynomial.const(den)
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        num, den = num._align(den)
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num, den):
        if not num.terms:
            return num, ParamPolynomial.const(1, den.vars)
        # common monomial factor
        n = len(num.vars)
        m = [min(e[k] for e in list(num.terms) + list(den.terms)) for k in range(n)]
        if any(m):
            num = ParamPolynomial._raw(num.vars, {tuple(x - y for x, y in zip(e, m)): c for e, c in num.terms.items()})
            den = ParamPolynomial._raw(den.vars, {tuple(x - y for x, y in zip(e, m)): c for e, c in den.terms.items()})
        if den.is_constant():
            c = den.constant_value()
            return num / c, ParamPolynomial.const(1, den.vars)
        # strip integer content jointly, leading denominator coefficient positive
        dl = 1
        for c in list(num.terms.values()) + list(den.terms.values()):
            dl = _lcm(dl, c.denominator)
        g = 0
        for c in list(num.terms.values()) + list(den.terms.values()):
            g = gcd(g, c.numerator * (dl // c.denominator))
        s = Fraction(dl, g)
        if den.leading_term()[1] < 0:
            s = -s
        num, den = num * s, den * s
        q, r = num.divmod_exact(den)
        if not r.terms:
            return q, ParamPolynomial.const(1, den.vars)
        return num, den

    def _other(self, o):
        if isinstance(o, ParamRationalFunction):
            return o
        if isinstance(o, (ParamPolynomial, int, Fraction)):
            return ParamRationalFunction(o)
        raise MixedRings(f"cannot combine rational function with {type(o).__name__}")

    def __add__(self, o):
        o = self._other(o)
        if self.den == o.den:
            return ParamRationalFunction(self.num + o.num, self.den)
        return ParamRationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamRationalFunction(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        o = self._other(o)
        return ParamRationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._other(o)
        if not o.num.terms:
            raise ZeroDivisionError("division by zero rational function")
        return ParamRationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._other(o) / self

    def inv(self):
        return ParamRationalFunction(1) / self

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return ParamRationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, o):
        try:
            o = self._other(o)
        except MixedRings:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def as_polynomial(self):
        return self.num / self.den

    def eval(self, assignment):
        d = self.den.eval(assignment)
        if not d:
            raise ZeroDivisionError("denominator vanishes at assignment")
        return self.num.eval(assignment) / d

    def subs(self, mapping):
        return self.num.subs(mapping) / self.den.subs(mapping)

    def diff(self, var):
        return ParamRationalFunction(self.num.diff(var) * self.den - self.num * self.den.diff(var),
                                     self.den * self.den)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ------------------------------------------------------------------ cyclotomic

_CYCLO = {}


def _pdivmod(a, b):
    """Dense polynomial division over Q, coefficient lists low->high."""
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and any(a):
        if not a[-1]:
            a.pop()
            continue
        f = a[-1] / lb
        k = len(a) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def cyclotomic_poly(N):
    """Integer coefficients of Phi_N, low to high."""
    if N in _CYCLO:
        return _CYCLO[N]
    num = [Fraction(-1)] + [Fraction(0)] * (N - 1) + [Fraction(1)]
    for d in range(1, N):
        if N % d == 0:
            num, r = _pdivmod(num, [Fraction(c) for c in cyclotomic_poly(d)])
            assert not r
    out = tuple(int(c) for c in num)
    _CYCLO[N] = out
    return out


def euler_phi(N):
    return len(cyclotomic_poly(N)) - 1


def _reduce_cyclo(N, raw):
    phi = cyclotomic_poly(N)
    d = len(phi) - 1
    v = [Fraction(c) for c in raw]
    for k in range(len(v) - 1, d - 1, -1):
        c = v[k]
        if c:
            for i in range(d):
                v[k - d + i] -= c * phi[i]
            v[k] = Fraction(0)
    v = v[:d] + [Fraction(0)] * (d - len(v))
    return tuple(v)


class CyclotomicElem:
    """Element of Q[w]/Phi_N(w); w is a primitive N-th root of unity."""

    __slots__ = ("N", "coords")

    def __init__(self, N, coords):
        self.N = N
        self.coords = _reduce_cyclo(N, coords)

    @classmethod
    def omega(cls, N, k=1):
        raw = [0] * (k % N) + [1]
        return cls(N, raw)

    @classmethod
    def scalar(cls, N, c):
        return cls(N, [c])

    def _other(self, o):
        if isinstance(o, CyclotomicElem):
            if o.N != self.N:
                raise MixedRings(f"Q(zeta_{self.N}) vs Q(zeta_{o.N})")
            return o
        if isinstance(o, (int, Fraction)):
            return CyclotomicElem(self.N, [o])
        raise MixedRings(f"cannot combine cyclotomic with {type(o).__name__}")

    def __add__(self, o):
        o = self._other(o)
        return CyclotomicElem(self.N, [x + y for x, y in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElem(self.N, [-x for x in self.coords])

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return CyclotomicElem(self.N, [x * o for x in self.coords])
        o = self._other(o)
        a, b = self.coords, o.coords
        raw = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return CyclotomicElem(self.N, raw)

    __rmul__ = __mul__

    def inv(self):
        if not any(self.coords):
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid on (self, Phi_N)
        phi = [Fraction(c) for c in cyclotomic_poly(self.N)]
        r0, r1 = phi, list(self.coords)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            qs = _pmul(q, s1)
            s2 = _psub(s0, qs)
            r0, r1, s0, s1 = r1, r, s1, s2
        c = r1[0]
        return CyclotomicElem(self.N, [x / c for x in s1])

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return CyclotomicElem(self.N, [x / o for x in self.coords])
        return self * self._other(o).inv()

    def __rtruediv__(self, o):
        return self._other(o) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = CyclotomicElem(self.N, [1])
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def __eq__(self, o):
        try:
            o = self._other(o)
        except MixedRings:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        if all(not c for c in self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.N, self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_scalar(self):
        return all(not c for c in self.coords[1:])

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coords):
            if c:
                parts.append(str(c) if k == 0 else f"{c}*w" + (f"^{k}" if k > 1 else ""))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def cyclotomic_reduce(N, raw):
    return CyclotomicElem(N, raw)


# ---------------------------------------------------------------------- rings

class Ring:
    """Descriptor of a coefficient domain for TruncatedSeries."""

    name = "ring"
    field = True

    def __call__(self, v):
        raise NotImplementedError

    def is_zero(self, v):
        return not v

    def conv(self, a, b, n):
        return _generic_conv(a, b, n, self.zero)

    def __eq__(self, o):
        return type(self) is type(o) and self._key() == o._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()

    def __repr__(self):
        return self.name


def _generic_conv(a, b, n, zero):
    la, lb = len(a), len(b)
    out = []
    for k in range(n):
        s = zero
        lo = max(0, k - lb + 1)
        hi = min(k, la - 1)
        for i in range(lo, hi + 1):
            x = a[i]
            if x:
                y = b[k - i]
                if y:
                    s = s + x * y
        out.append(s)
    return out


class RationalField(Ring):
    name = "QQ"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, ParamPolynomial) and v.is_constant():
            return v.constant_value()
        if isinstance(v, CyclotomicElem) and v.is_scalar():
            return v.coords[0]
        raise MixedRings(f"cannot coerce {type(v).__name__} into QQ")

    def conv(self, a, b, n):
        da = 1
        for c in a:
            if c.denominator != 1:
                da = _lcm(da, c.denominator)
        db = 1
        for c in b:
            if c.denominator != 1:
                db = _lcm(db, c.denominator)
        ia = [c.numerator * (da // c.denominator) for c in a]
        ib = [c.numerator * (db // c.denominator) for c in b]
        raw = kernels.conv_int(ia, ib, n)
        d = da * db
        if d == 1:
            return [Fraction(v) for v in raw]
        return [Fraction(v, d) for v in raw]


QQ = RationalField()


class PrimeField(Ring):
    """F_p with plain ints in [0, p) as elements."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def _key(self):
        return (self.p,)

    def __call__(self, v):
        if isinstance(v, PrimeFieldElem):
            if v.p != self.p:
                raise MixedRings(f"F_{v.p} into F_{self.p}")
            return v.value
        if isinstance(v, int):
            return v % self.p
        if isinstance(v, Fraction):
            return rational_mod_p(v, self.p).value
        raise MixedRings(f"cannot coerce {type(v).__name__} into {self.name}")

    def conv(self, a, b, n):
        return kernels.conv_modp(a, b, n, self.p)

    def inv(self, v):
        if v % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(v, -1, self.p)


def GF(p):
    return PrimeField(p)


class PolyRing(Ring):
    """Q[vars] with ParamPolynomial elements (division only when exact)."""

    field = False

    def __init__(self, vars):
        self.vars = tuple(vars)
        self.name = "QQ[" + ",".join(self.vars) + "]"
        self.zero = ParamPolynomial.const(0, self.vars)
        self.one = ParamPolynomial.const(1, self.vars)

    def _key(self):
        return self.vars

    def gen(self, name):
        return ParamPolynomial.var(name).embed(self.vars)

    def __call__(self, v):
        if isinstance(v, ParamPolynomial):
            return v.embed(self.vars) if set(v.used_vars()) <= set(self.vars) else _bad(v, self)
        if isinstance(v, (int, Fraction)):
            return ParamPolynomial.const(v, self.vars)
        raise MixedRings(f"cannot coerce {type(v).__name__} into {self.name}")

    def is_zero(self, v):
        return not v.terms

    def extend(self, name):
        return PolyRing(self.vars + (name,))


def _bad(v, ring):
    raise MixedRings(f"{v} has variables outside {ring.name}")


class FracRing(Ring):
    """Q(vars) with ParamRationalFunction elements."""

    def __init__(self, vars):
        self.vars = tuple(vars)
        self.name = "QQ(" + ",".join(self.vars) + ")"
        self.zero = ParamRationalFunction(ParamPolynomial.const(0, self.vars))
        self.one = ParamRationalFunction(ParamPolynomial.const(1, self.vars))

    def _key(self):
        return self.vars

    def gen(self, name):
        return ParamRationalFunction(ParamPolynomial.var(name).embed(self.vars))

    def __call__(self, v):
        if isinstance(v, ParamRationalFunction):
            return v
        if isinstance(v, (ParamPolynomial, int, Fraction)):
            return ParamRationalFunction(v)
        raise MixedRings(f"cannot coerce {type(v).__name__} into {self.name}")

    def is_zero(self, v):
        return v.is_zero()


class CyclotomicField(Ring):
    def __init__(self, N):
        self.N = N
        self.name = f"QQ(zeta_{N})"
        self.zero = CyclotomicElem(N, [0])
        self.one = CyclotomicElem(N, [1])

    def _key(self):
        return (self.N,)

    def omega(self, k=1):
        return CyclotomicElem.omega(self.N, k)

    def __call__(self, v):
        if isinstance(v, CyclotomicElem):
            if v.N != self.N:
                raise MixedRings(f"zeta_{v.N} into zeta_{self.N}")
            return v
        if isinstance(v, (int, Fraction)):
            return CyclotomicElem(self.N, [v])
        raise MixedRings(f"cannot coerce {type(v).__name__} into {self.name}")

    def is_zero(self, v):
        return v.is_zero()

    def conv(self, a, b, n):
        # convolve each coordinate pair with the integer kernel, then reduce
        d = euler_phi(self.N)
        cols_a = [[c.coords[i] for c in a] for i in range(d)]
        cols_b = [[c.coords[i] for c in b] for i in range(d)]
        raw = [[Fraction(0)] * (2 * d - 1) for _ in range(n)]
        for i in range(d):
            if not any(cols_a[i]):
                continue
            for j in range(d):
                if not any(cols_b[j]):
                    continue
                prod = QQ.conv(cols_a[i], cols_b[j], n)
                for k in range(n):
                    if prod[k]:
                        raw[k][i + j] += prod[k]
        return [CyclotomicElem(self.N, r) for r in raw]


def ring_inv(ring, v):
    if isinstance(ring, PrimeField):
        return ring.inv(v)
    return ring.one / v


def ring_div(ring, x, y):
    if isinstance(ring, PrimeField):
        return x * ring.inv(y) % ring.p
    return x / y
