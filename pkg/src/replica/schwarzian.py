"""Order-by-order solutions of W(x) - W(y) y'^2 + {y, x} = 0 and related checks.

The solver never divides by y or x: it works with
    E = (y/x)^2 V(x) y'^2 - V(y) y'^4 + y^2 (y''' y' - 3/2 y''^2),
which is y^2 y'^2 times the residual, where V = x^2 W. For y = a x^N + ...
the coefficient c_m first enters E at order 3N - 4 + m, and enters affinely,
so each step is a single linear equation A c_m + B = 0.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import QQ, PolyRing, ParamPolynomial, NonUnitDivisor
from .series import TruncatedSeries, LaurentSeries
from .special import WSpec, FSpec, w_body, build_F


class Inconsistent(ArithmeticError):
    def __init__(self, msg, order=None):
        super().__init__(msg)
        self.order = order


class WNotNormalized(ValueError):
    pass


class NoConstantMultiplier(ArithmeticError):
    pass


@dataclass
class SchwarzianProblem:
    V: TruncatedSeries              # x^2 W(x)
    K: int
    ring: object = None
    F: TruncatedSeries = None       # used to fix the particular value at a free order
    squared: bool = False

    @property
    def w(self):
        """Coefficient of x^-2 in W."""
        return self.V.coeffs[0]

    @classmethod
    def from_spec(cls, fspec, K, alpha=0, ring=None):
        if isinstance(fspec, str):
            fspec = FSpec.parse(fspec)
        V = w_body(WSpec(fspec, Fraction(alpha)), K + 1)
        F = build_F(fspec, K + 1)
        return cls(V, K, ring, F, fspec.squared)


@dataclass
class FamilySolution:
    kind: str
    series: TruncatedSeries
    ledger: list = field(default_factory=list)
    N: int = 1

    @property
    def ring(self):
        return self.series.ring

    def coeff(self, n):
        return self.series.coeffs[n]

    def specialize(self, **values):
        return specialize(self.series, values)


def specialize(s, values, ring=QQ):
    """Evaluate polynomial coefficients at the given parameter values."""
    out = []
    for c in s.coeffs:
        if isinstance(c, ParamPolynomial):
            v = c.subs(values)
            if isinstance(v, ParamPolynomial):
                v = v.constant_value() if v.is_constant() else v
            out.append(v)
        else:
            out.append(c)
    return TruncatedSeries(out, s.K, ring)


def _E_coeff(Vr, ycoeffs, t, R):
    """Coefficient of x^t in the polynomial residual for the polynomial y."""
    T = t + 3
    Y = TruncatedSeries._raw(list(ycoeffs[:T + 1]) + [R.zero] * max(0, T + 1 - len(ycoeffs)), T, R)
    y1 = Y.derive()
    y2 = y1.derive()
    y3 = y2.derive()
    y1 = y1.truncate(t)
    y2 = y2.truncate(t)
    Yt = Y.truncate(t)
    Yx = Y.shift(-1).truncate(t)
    Vt = Vr.pad(t) if Vr.K < t else Vr.truncate(t)
    p1 = y1 * y1
    term1 = Yx * Yx * Vt * p1
    term2 = Vt.compose(Yt) * p1 * p1
    term3 = Yt * Yt * (y3 * y1 - y2 * y2 * Fraction(3, 2))
    return (term1 - term2 + term3).coeffs[t]


def _particular(F, ycoeffs, m, R):
    """c_m making F(y) = F(x) y' hold at order m (the one-parameter branch)."""
    Fr = F.change_ring(R)
    base = list(ycoeffs)

    def P(cm):
        yc = base[:m] + [cm]
        Y = TruncatedSeries._raw(yc + [R.zero] * 0, m, R)
        lhs = Fr.truncate(m).compose(Y)
        rhs = Fr.truncate(m) * Y.derive().pad(m)
        return (lhs - rhs).coeffs[m]

    B = P(R.zero)
    A = P(R.one) - B
    return -B / A


def solve_family(problem, N=1, lead=None, b_scale=1728, b_name="b", kind=None):
    """Solve for y = lead x^N + sum c_m x^m through x^K."""
    R = problem.ring or PolyRing(("a",))
    if lead is None:
        lead = R.gen("a") if isinstance(R, PolyRing) else R.one
    lead = R(lead)
    K = problem.K
    y = [R.zero] * N + [lead]
    Vr = problem.V.change_ring(R)
    ledger = []
    for m in range(N + 1, K + 1):
        t = 3 * N - 4 + m
        y.append(R.zero)
        B = _E_coeff(Vr, y, t, R)
        y[m] = R.one
        A = _E_coeff(Vr, y, t, R) - B
        y[m] = R.zero
        if R.is_zero(A):
            if not R.is_zero(B):
                raise Inconsistent(f"no solution at order {m}", m)
            if not isinstance(R, PolyRing) or problem.F is None:
                raise Inconsistent(f"free coefficient at order {m} needs a parameter ring and F", m)
            R2 = R.extend(b_name)
            y = [R2(c) for c in y]
            Vr = problem.V.change_ring(R2)
            part = _particular(problem.F, y, m, R2)
            y[m] = part + R2.gen(b_name) * R2.gen("a") * b_scale
            ledger.append((m, b_name))
            R = R2
            continue
        try:
            y[m] = -B / A
        except NonUnitDivisor as exc:
            raise Inconsistent(f"coefficient at order {m} is not polynomial in the parameters", m) from exc
    kind = kind or ("one-param" if N == 1 else f"correspondence({N})")
    if ledger:
        kind = "two-param"
    return FamilySolution(kind, TruncatedSeries._raw(y, K, R), ledger, N)


def solve_one_param(problem):
    return solve_family(problem, 1)


def solve_correspondence(problem, N):
    if N < 2:
        raise ValueError("correspondence degree must be at least 2")
    if problem.w != Fraction(-1, 2):
        raise WNotNormalized(f"W starts with {problem.w} x^-2, not -1/2 x^-2")
    return solve_family(problem, N)


def solve_two_param(problem, alpha=1, b_scale=1728):
    if alpha != 1:
        raise NotImplementedError("only alpha = 1 is implemented")
    sol = solve_family(problem, 1, b_scale=b_scale)
    if sol.ledger != [(2, "b")]:
        raise Inconsistent(f"expected the free parameter at order 2, got {sol.ledger}")
    return sol


# ------------------------------------------------------------------ residuals

def _laurent_V(V):
    return LaurentSeries(V, -2)


def schwarzian_residual(V, y):
    """W(x) - W(y) y'^2 + {y, x}, with W = V / x^2, as a Laurent series."""
    R = y.ring
    Vr = V.change_ring(R) if V.ring != R else V
    K = min(y.K, Vr.K)
    y = y.truncate(K)
    Vr = Vr.truncate(K)
    yl = LaurentSeries(y, 0)
    d1 = yl.derive()
    ratio = d1 / yl
    Wy_y2 = LaurentSeries(Vr.compose(y), 0) * ratio * ratio
    return _laurent_V(Vr) - Wy_y2 + yl.schwarzian()


def rank2_residual(F, alpha, y, squared=False):
    """A(x) - A(y) y' + y''/y' with A = F'/F + alpha/F."""
    R = y.ring
    K = min(F.K, y.K)
    F = F.truncate(K)
    y = y.truncate(K)
    if squared:
        if alpha:
            raise NotImplementedError("alpha term needs F itself, not F^2")
        G = LaurentSeries(F, 0).normalized()
        A = G.derive() / G * Fraction(1, 2)
    else:
        Fl = LaurentSeries(F, 0).normalized()
        A = Fl.derive() / Fl
        if alpha:
            A = A + LaurentSeries(TruncatedSeries.const(Fraction(alpha), K), 0) / Fl
    # A = x^s * P(x); A(y) = y^s * P(y)
    s = A.shift
    P = A.body.change_ring(R) if R != QQ else A.body
    yl = LaurentSeries(y, 0)
    Ay = LaurentSeries(P.truncate(min(P.K, K)).compose(y), 0) * (yl ** s)
    d1 = yl.derive()
    d2 = d1.derive()
    Ax = LaurentSeries(P, s)
    return Ax - Ay * d1 + d2 / d1


# ------------------------------------------------------------- epsilon family

def epsilon_family(F, M, K=None):
    """B_1 = F, (n+1) B_{n+1} = F B_n' - n B_n, for n < M."""
    K = K or F.K
    F = F.truncate(K)
    B = [F]
    for n in range(1, M):
        Bn = B[-1]
        nxt = (F * Bn.derive().pad(K) - Bn * n) / (n + 1)
        B.append(nxt.truncate(K))
    return B


def expand_in_epsilon(family, M):
    """Coefficients of eps^1..eps^M after a -> 1 + eps, as QQ series."""
    s = family.series
    out = [[Fraction(0)] * (s.K + 1) for _ in range(M + 1)]
    eps = ParamPolynomial.var("e")
    one = ParamPolynomial.const(1, ("e",))
    for n, c in enumerate(s.coeffs):
        if not c:
            continue
        v = c.subs({"a": one + eps})
        if not isinstance(v, ParamPolynomial):
            v = ParamPolynomial.const(v, ("e",))
        for k in range(M + 1):
            out[k][n] = v.coeff((k,)) if v.vars == ("e",) else v.embed(("e",)).coeff((k,))
    return [TruncatedSeries._raw(row, s.K, QQ) for row in out]


# ---------------------------------------------------------- transport checks

def d_da(s, var="a"):
    return s.map(lambda c: c.diff(var))


def _first_nonzero(s):
    v = s.valuation
    return None if v == math.inf else v


def transport_residuals(F, family, mu=None):
    """Residuals of mu a dy/da = mu F(y) = F(x) y' (mu defaults to the family degree N)."""
    y = family.series
    R = y.ring
    mu = family.N if mu is None else mu
    K = min(F.K, y.K)
    Fr = F.change_ring(R).truncate(K)
    y = y.truncate(K)
    a_dyda = _a_dyda(y, R)
    F_of_y = Fr.compose(y)
    F_dydx = Fr * y.derive().pad(K)
    res = {
        "a_dyda_minus_F_of_y": (a_dyda - F_of_y).scale(mu),
        "F_dydx_minus_mu_F_of_y": F_dydx - F_of_y.scale(mu),
        "mu_a_dyda_minus_F_dydx": a_dyda.scale(mu) - F_dydx,
    }
    return {k: {"vanishes": v.is_zero(), "first_nonzero_order": _first_nonzero(v), "order": v.K}
            for k, v in res.items()}


def _a_dyda(y, R):
    a = R.gen("a")
    return y.map(lambda c: c.diff("a") * a)


def multiplier_check(F, y, squared=False):
    """The constant mu with mu F(y) = F(x) y' (or mu^2 G(y) = G(x) y'^2 for G = F^2)."""
    R = y.ring
    K = min(F.K, y.K)
    Fr = F.change_ring(R).truncate(K) if F.ring != R else F.truncate(K)
    y = y.truncate(K)
    lhs = Fr.compose(y)
    d = y.derive().pad(K)
    rhs = Fr * (d * d if squared else d)
    v = lhs.valuation
    if v == math.inf:
        raise NoConstantMultiplier("F(y) vanishes to the known order")
    ratio = rhs.coeffs[v] / lhs.coeffs[v]
    if (lhs.scale(ratio) - rhs).valuation != math.inf:
        raise NoConstantMultiplier("no constant multiplier makes the relation hold")
    if not squared:
        return ratio
    r = Fraction(ratio)
    from math import isqrt
    n, dd = r.numerator, r.denominator
    if n < 0 or isqrt(n) ** 2 != n or isqrt(dd) ** 2 != dd:
        raise NoConstantMultiplier(f"mu^2 = {r} is not a rational square")
    return Fraction(isqrt(n), isqrt(dd))


# ------------------------------------------------------------ family algebra

def substitute_params(s, mapping, ring):
    """Apply a parameter substitution to every coefficient."""
    return TruncatedSeries._raw([ring(c.subs(mapping)) if isinstance(c, ParamPolynomial) else ring(c)
                                 for c in s.coeffs], s.K, ring)


def rename_params(s, mapping, ring):
    return TruncatedSeries._raw([ring(c.rename(mapping)) for c in s.coeffs], s.K, ring)


def composition_law_residual(family):
    """y(a, y(a', x)) - y(a a', x) over Q[a, a']."""
    y = family.series
    R = PolyRing(("a", "A"))
    outer = y.change_ring(R)
    inner = rename_params(y, {"a": "A"}, R)
    lhs = outer.compose(inner)
    a, A = R.gen("a"), R.gen("A")
    rhs = substitute_params(y, {"a": a * A}, R)
    return lhs - rhs


def two_param_law_residual(family):
    """Y(a', b', Y(a, b, x)) - Y(a a', a b' + b, x) over Q[a, b, a', b']."""
    Y = family.series
    R = PolyRing(("a", "b", "A", "B"))
    inner = Y.change_ring(R)
    outer = rename_params(Y, {"a": "A", "b": "B"}, R)
    lhs = outer.compose(inner)
    a, b, A, B = (R.gen(v) for v in ("a", "b", "A", "B"))
    rhs = substitute_params(Y, {"a": a * A, "b": a * B + b}, R)
    return lhs - rhs


def decomposition_residual(family, Q, X):
    """y(a, x) - X(a Q(x)) coefficientwise in Q[a]."""
    y = family.series
    R = y.ring
    K = min(y.K, Q.K, X.K)
    aQ = Q.truncate(K).change_ring(R).map(lambda c: c * R.gen("a"))
    return y.truncate(K) - X.truncate(K).change_ring(R).compose(aQ)
