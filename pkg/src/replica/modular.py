"""Modular curves: catalog, series checks, Puiseux branches, a resultant and the Landen curve."""

import ast
import configparser
import math
import operator
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import ParamPolynomial, CyclotomicField, CyclotomicElem, QQ
from .series import TruncatedSeries, PuiseuxBranch
from .special import build_F, nome_from_f


class BadParametrization(ValueError):
    pass


class DivisionNotExact(ArithmeticError):
    pass


class ExpressionError(ValueError):
    pass


# -------------------------------------------------------------- expressions

_BIN = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow}


def safe_eval(text, env):
    """Evaluate +, -, *, /, ** over integers and the names in env."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ExpressionError(f"unknown name {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, int) or right < 0:
                    raise ExpressionError("exponents must be nonnegative integer literals")
            if isinstance(node.op, ast.Div) and isinstance(left, int) and isinstance(right, int):
                return Fraction(left, right)
            return _BIN[type(node.op)](left, right)
        raise ExpressionError(f"unsupported syntax: {ast.dump(node)[:60]}")

    return ev(tree)


# ------------------------------------------------------- bivariate polynomials

class BivariatePolynomial:
    """Sparse exact polynomial in x and y."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {(int(i), int(j)): Fraction(c) for (i, j), c in (terms or {}).items() if c}

    @classmethod
    def from_param(cls, p):
        p = p.embed(("x", "y")) if set(p.used_vars()) <= {"x", "y"} else None
        if p is None:
            raise ExpressionError("polynomial uses variables other than x, y")
        return cls(dict(p.terms))

    @classmethod
    def parse(cls, text):
        env = {"x": ParamPolynomial.var("x").embed(("x", "y")),
               "y": ParamPolynomial.var("y").embed(("x", "y"))}
        v = safe_eval(text, env)
        if not isinstance(v, ParamPolynomial):
            v = ParamPolynomial.const(v, ("x", "y"))
        return cls.from_param(v)

    def to_param(self):
        return ParamPolynomial(("x", "y"), self.terms)

    def swap(self):
        return BivariatePolynomial({(j, i): c for (i, j), c in self.terms.items()})

    def is_symmetric(self):
        return self.terms == self.swap().terms

    def degree(self, var="y"):
        k = 0 if var == "x" else 1
        return max((e[k] for e in self.terms), default=-1)

    def coeffs_in_y(self):
        """List of univariate x-polynomials (dict power -> coeff), indexed by the power of y."""
        out = [dict() for _ in range(self.degree("y") + 1)]
        for (i, j), c in self.terms.items():
            out[j][i] = c
        return out

    def __eq__(self, o):
        return isinstance(o, BivariatePolynomial) and self.terms == o.terms

    def __len__(self):
        return len(self.terms)

    def substitute(self, fx, fy):
        """P(fx, fy) as a series."""
        K = min(fx.K, fy.K)
        R = fx.ring
        fx, fy = fx.truncate(K), fy.truncate(K)
        px = {0: TruncatedSeries.const(R.one, K, R)}
        py = {0: TruncatedSeries.const(R.one, K, R)}
        for i in sorted({i for i, _ in self.terms}):
            if i not in px:
                px[i] = fx ** i
        for j in sorted({j for _, j in self.terms}):
            if j not in py:
                py[j] = fy ** j
        total = TruncatedSeries([], K, R)
        for (i, j), c in sorted(self.terms.items()):
            total = total + (px[i] * py[j]).truncate(K).scale(c)
        return total

    def to_terms(self):
        return [{"exps": [i, j], "num": str(c.numerator), "den": str(c.denominator)}
                for (i, j), c in sorted(self.terms.items())]

    def __repr__(self):
        return str(self.to_param())


# ------------------------------------------------------------------- catalog

@dataclass
class CurveCatalogEntry:
    N: object
    x_expr: str
    y_expr: str
    helpers: dict
    gamma: BivariatePolynomial = None

    def x_series(self, K):
        return self._series(self.x_expr, K)

    def y_series(self, K):
        return self._series(self.y_expr, K)

    def _series(self, expr, K):
        t = TruncatedSeries.x(K)
        env = {"t": t}
        for name, body in self.helpers.items():
            env[name] = safe_eval(body, dict(env))
        v = safe_eval(expr, env)
        if not isinstance(v, TruncatedSeries):
            v = TruncatedSeries.const(v, K)
        return v.truncate(K)


def catalog_path():
    base = os.environ.get("REPLICA_FIXTURES")
    if base and os.path.exists(os.path.join(base, "curves.txt")):
        return os.path.join(base, "curves.txt")
    return os.path.join(os.path.dirname(__file__), "data", "curves.txt")


@lru_cache(maxsize=None)
def load_catalog(path=None):
    cp = configparser.ConfigParser()
    cp.optionxform = str
    with open(path or catalog_path()) as fh:
        cp.read_file(fh)
    out = {}
    for sec in cp.sections():
        items = dict(cp[sec])
        x = items.pop("x", None)
        y = items.pop("y", None)
        g = items.pop("gamma", None)
        key = int(sec[1:]) if sec.startswith("N") else sec
        out[key] = CurveCatalogEntry(key, x, y, items, BivariatePolynomial.parse(g) if g else None)
    return out


def catalog_entry(N):
    cat = load_catalog()
    if N not in cat:
        raise KeyError(f"no catalog entry for {N}")
    return cat[N]


def parametrization_to_series(entry, K):
    """(x(t), y(t), y(x)) with t(x) the branch t = c x + O(x^2)."""
    xt = entry.x_series(K)
    if xt.valuation != 1:
        raise BadParametrization(f"x(t) has valuation {xt.valuation}, expected 1")
    yt = entry.y_series(K)
    tx = xt.revert()
    return xt, yt, yt.compose(tx)


def verify_curve(gamma, fx, fy, K=None):
    if K is not None:
        fx, fy = fx.truncate(K), fy.truncate(K)
    return gamma.substitute(fx, fy)


def first_nonzero_order(s):
    v = s.valuation
    return None if v == math.inf else v


# ------------------------------------------------------- elliptic reference

@lru_cache(maxsize=8)
def elliptic_pair(K):
    """(nome Q, mirror X) for the elliptic F through x^K."""
    Q = nome_from_f(build_F("elliptic", K), K)
    return Q, Q.revert()


def correspondence_by_composition(N, K):
    """X(Q(x)^N) through x^K."""
    Q, X = elliptic_pair(K)
    return X.compose((Q ** N).truncate(K))


# --------------------------------------------------------------- branches

def puiseux_branch(yN, N):
    """Inverse of y_N as a series in u = omega x^(1/N)."""
    g = yN.nth_root_split(N)
    return PuiseuxBranch(N, g.revert())


def branch_composite(N, omega, K, yN=None):
    """g^-1(omega g(x)) with g = (y_N)^(1/N), over Q(zeta_N)."""
    if yN is None:
        yN = correspondence_by_composition(N, K + N)
    g = yN.nth_root_split(N).truncate(K)
    ring = CyclotomicField(N)
    if not isinstance(omega, CyclotomicElem):
        omega = ring(omega)
    gc = g.change_ring(ring)
    ginv = g.revert().change_ring(ring)
    return ginv.compose(gc.scale(omega))


def self_compose(f, times):
    out = f
    for _ in range(times - 1):
        out = f.compose(out)
    return out


def branch_product(yN, N, ring_N=None):
    """Product over the N choices of omega of the branch series, as a series in x."""
    br = puiseux_branch(yN, N)
    body = br.body
    R = CyclotomicField(ring_N or N)
    u = body.change_ring(R)
    w = R.omega(1) if (ring_N or N) > 1 else R.one
    prod = None
    for k in range(N):
        s = u.compose(TruncatedSeries.x(body.K, R).scale(w ** k))
        prod = s if prod is None else prod * s
    coeffs = []
    for k, c in enumerate(prod.coeffs):
        if not c.is_scalar():
            raise ArithmeticError("branch product is not rational")
        coeffs.append(c.coords[0])
    # only powers u^(N m) survive; read them as x^m
    K = prod.K // N
    out = [Fraction(0)] * (K + 1)
    for m in range(K + 1):
        out[m] = coeffs[N * m]
    for k, c in enumerate(coeffs):
        if c and k % N:
            raise ArithmeticError(f"branch product has a u^{k} term")
    return TruncatedSeries._raw(out, K, QQ)


# ---------------------------------------------------------------- resultant

def _bareiss_det(M):
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                if prev is not None:
                    q, r = v.divmod_exact(prev)
                    if r:
                        raise DivisionNotExact("Bareiss step left a remainder")
                    v = q
                M[i][j] = v
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d


def sylvester_resultant(P, Q, var):
    """Resultant in var of two ParamPolynomials sharing a variable list."""
    vs = tuple(v for v in P.vars if v != var)
    k = P.vars.index(var)

    def coeffs(p):
        deg = p.degree(var)
        out = [ParamPolynomial.const(0, vs) for _ in range(deg + 1)]
        for e, c in p.terms.items():
            rest = tuple(x for i, x in enumerate(e) if i != k)
            out[e[k]] = out[e[k]] + ParamPolynomial(vs, {rest: c})
        return out[::-1]  # leading first

    a, b = coeffs(P), coeffs(Q)
    m, n = len(a) - 1, len(b) - 1
    zero = ParamPolynomial.const(0, vs)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (n - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (m - 1 - i))
    return _bareiss_det(rows)


@lru_cache(maxsize=1)
def gamma4_by_resultant():
    """Res_z(G2(x, z), G2(z, y)) with every (x - y) factor removed, made primitive.

    Returns (gamma4, full resultant, multiplicity of x - y).
    """
    g2 = catalog_entry(2).gamma.to_param()
    vs = ("x", "y", "z")
    P = g2.rename({"y": "z"}).embed(vs)
    Q = g2.rename({"x": "z"}).embed(vs)
    res = sylvester_resultant(P, Q, "z").embed(("x", "y"))
    diag = ParamPolynomial.var("x").embed(("x", "y")) - ParamPolynomial.var("y").embed(("x", "y"))
    q, mult = res, 0
    while True:
        d, r = q.divmod_exact(diag)
        if r:
            break
        q, mult = d, mult + 1
    if mult < 2:
        raise DivisionNotExact(f"resultant divisible by (x - y)^{mult} only")
    q = q / q.content()
    if q.terms[max(q.terms, key=lambda e: (e[1], e[0]))] < 0:
        q = -q
    return BivariatePolynomial.from_param(q), BivariatePolynomial.from_param(res), mult


def root_product_series(gamma, K):
    """(-1)^d c_0(x)/c_d(x): the product of the roots in y, expanded in x."""
    cs = gamma.coeffs_in_y()
    d = len(cs) - 1
    top = max(max(cs[0], default=0), max(cs[d], default=0))
    num = [cs[0].get(i, 0) for i in range(top + 1)]
    den = [cs[d].get(i, 0) for i in range(top + 1)]
    from .series import expand_rational
    s = expand_rational(num, den, K)
    return s if d % 2 == 0 else -s


# ------------------------------------------------------------------- Landen

def landen_series(K):
    e = catalog_entry("landen")
    return e.x_series(K), e.y_series(K)


def landen_check(K):
    """Residual of the Landen-scale curve on the Hauptmodul pair in k."""
    e = catalog_entry("landen")
    xk, yk = landen_series(K)
    return e.gamma.substitute(xk, yk)
