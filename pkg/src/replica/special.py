"""Hypergeometric and Heun series, the F(x) families, W(x), nome and mirror map."""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import QQ, parse_rational
from .series import TruncatedSeries, LaurentSeries


class BadGamma(ValueError):
    pass


class BadNormalization(ValueError):
    pass


class FSpecError(ValueError):
    pass


def _check_gamma(gamma):
    if gamma.denominator == 1 and gamma <= 0:
        raise BadGamma(f"gamma = {gamma} is a nonpositive integer")


def gauss_2f1_series(alpha, beta, gamma, scale, K):
    """sum (alpha)_n (beta)_n / ((gamma)_n n!) (scale x)^n through x^K."""
    alpha, beta, gamma, scale = map(Fraction, (alpha, beta, gamma, scale))
    _check_gamma(gamma)
    c = [Fraction(1)]
    for n in range(K):
        c.append(c[-1] * (alpha + n) * (beta + n) / ((gamma + n) * (n + 1)) * scale)
    return TruncatedSeries._raw(c, K, QQ)


def heun_series(a, q, alpha, beta, gamma, delta, K):
    """Local HeunG solution at 0, normalized to 1.

    Uses the three-term recurrence of the general Heun equation
    y'' + (g/x + d/(x-1) + e/(x-a)) y' + (ab x - q)/(x(x-1)(x-a)) y = 0
    with e = alpha + beta + 1 - gamma - delta.
    """
    a, q, alpha, beta, gamma, delta = map(Fraction, (a, q, alpha, beta, gamma, delta))
    _check_gamma(gamma)
    if a == 0:
        raise ValueError("singular point a must be nonzero")
    eps = alpha + beta + 1 - gamma - delta
    c = [Fraction(1)]
    if K >= 1:
        c.append(q / (a * gamma))
    for n in range(1, K):
        R = a * (n + 1) * (n + gamma)
        Qn = n * ((n - 1 + gamma) * (1 + a) + a * delta + eps)
        P = (n - 1 + alpha) * (n - 1 + beta)
        c.append(((Qn + q) * c[n] - P * c[n - 1]) / R)
    return TruncatedSeries._raw(c[:K + 1], K, QQ)


def heun_residual(a, q, alpha, beta, gamma, delta, H):
    """x(x-1)(x-a) H'' + [...] H' + (alpha beta x - q) H, as a series."""
    a, q, alpha, beta, gamma, delta = map(Fraction, (a, q, alpha, beta, gamma, delta))
    eps = alpha + beta + 1 - gamma - delta
    K = H.K
    x = TruncatedSeries.x(K)
    d1 = H.derive().pad(K)
    d2 = d1.derive().pad(K)
    cubic = x * (x - 1) * (x - a)
    lin = gamma * (x - 1) * (x - a) + delta * x * (x - a) + eps * x * (x - 1)
    return (cubic * d2 + lin * d1 + (alpha * beta * x - q) * H).truncate(K - 2)


# --------------------------------------------------------------------- F specs

@dataclass
class FSpec:
    variant: str
    payload: object = None
    label: str = ""

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("elliptic", "elliptic-2F1"):
            return cls("elliptic", None, "elliptic")
        if text in ("heun81", "heun-81"):
            return cls("heun81", None, "heun81")
        if text.startswith("poly:"):
            body = text[5:]
            try:
                cs = [parse_rational(s) for s in body.split(",")]
            except (ValueError, ZeroDivisionError) as exc:
                raise FSpecError(f"bad coefficient list {body!r}") from exc
            return cls("polynomial", [Fraction(0)] + cs, text)
        if text.startswith("poly-factored:"):
            body = text[len("poly-factored:"):]
            groups = re.findall(r"\(([^)]*)\)", body)
            if not groups or "".join(f"({g})" for g in groups) != body.replace(" ", ""):
                raise FSpecError(f"bad factor list {body!r}")
            poly = [Fraction(0), Fraction(1)]
            for g in groups:
                fac = [parse_rational(s) for s in g.split(",")]
                out = [Fraction(0)] * (len(poly) + len(fac) - 1)
                for i, u in enumerate(poly):
                    for j, v in enumerate(fac):
                        out[i + j] += u * v
                poly = out
            return cls("polynomial", poly, text)
        raise FSpecError(f"unknown F specification {text!r}")

    @classmethod
    def custom(cls, series, label="custom"):
        return cls("custom", series, label)

    @classmethod
    def polynomial(cls, coeffs, label="poly"):
        """Coefficients from x^0 upward."""
        return cls("polynomial", [Fraction(c) for c in coeffs], label)

    @property
    def squared(self):
        return self.variant == "heun81"


@dataclass
class WSpec:
    base: FSpec
    alpha: Fraction = field(default_factory=Fraction)


HEUN81 = (81, Fraction(1, 2), Fraction(1, 6), Fraction(1, 3), Fraction(1, 2), Fraction(1, 2))


def build_F(spec, K):
    """F through x^K. For heun81 the returned series is 81 F^2 (F itself is not a power series)."""
    if isinstance(spec, str):
        spec = FSpec.parse(spec)
    if spec.variant == "elliptic":
        h = gauss_2f1_series(Fraction(1, 12), Fraction(5, 12), 1, 1728, K)
        s = (1 - 1728 * TruncatedSeries.x(K)).pow_rational(Fraction(1, 2))
        return (s * h * h).shift(1).truncate(K)
    if spec.variant == "heun81":
        H = heun_series(*HEUN81, K)
        x = TruncatedSeries.x(K)
        return (x * (81 - x) * (1 - x) * H ** 4).truncate(K)
    if spec.variant == "polynomial":
        return TruncatedSeries(list(spec.payload), K, QQ)
    if spec.variant == "custom":
        s = spec.payload
        if s.K < K:
            raise BadNormalization(f"custom F known only to order {s.K}")
        return s.truncate(K)
    raise FSpecError(spec.variant)


def w_from_f(spec, K):
    """W = F''/F - (F'/F)^2/2 + alpha^2/(2F^2) as a Laurent series known through x^(K-2)."""
    if not isinstance(spec, WSpec):
        spec = WSpec(spec if isinstance(spec, FSpec) else FSpec.parse(spec), Fraction(0))
    alpha = Fraction(spec.alpha)
    G = build_F(spec.base, K + 3)
    if spec.base.squared:
        G2 = LaurentSeries(G, 0).normalized()
        L = G2.derive() / G2
        W = L.derive() * Fraction(1, 2) + L * L * Fraction(1, 8)
        if alpha:
            W = W + (G2 * Fraction(1, 81)) ** -1 * (alpha * alpha / 2)
    else:
        F = LaurentSeries(G, 0).normalized()
        d1 = F.derive()
        d2 = d1.derive()
        r = d1 / F
        W = d2 / F - r * r * Fraction(1, 2)
        if alpha:
            W = W + (F * F) ** -1 * (alpha * alpha / 2)
    return W.truncate_abs(K - 2)


def w_body(spec, K):
    """V = x^2 W as a power series through x^K."""
    W = w_from_f(spec, K)
    if W.valuation < -2:
        raise BadNormalization("W has a pole of order above 2")
    return TruncatedSeries._raw([W.coeff(e - 2) for e in range(K + 1)], K, QQ)


def nome_from_f(F, K=None):
    """Q = x + ... with F Q' = Q, solved coefficient by coefficient."""
    if K is None:
        K = F.K
    f = F.coeffs
    if F.K < min(K, 1) or f[0] != 0 or f[1] != 1:
        raise BadNormalization("F must be x + O(x^2)")
    K = min(K, F.K)
    q = [Fraction(0), Fraction(1)] + [Fraction(0)] * (K - 1)
    for n in range(2, K + 1):
        s = 0
        for k in range(2, n + 1):
            fk = f[k]
            if fk:
                s += fk * (n - k + 1) * q[n - k + 1]
        q[n] = Fraction(-s) / (n - 1)
    return TruncatedSeries._raw(q[:K + 1], K, QQ)


def mirror_from_nome(Q):
    return Q.revert()


def nome_by_exp(F, K=None):
    """exp(integral of 1/F - 1/x) times x; a slower cross-check of nome_from_f."""
    F = F.truncate(K or F.K)
    h = (F.shift(-1).inverse() - 1).shift(-1)
    return h.integrate().exp().shift(1)


def family_limits(family):
    """(Q, X) read off a one-parameter family y(a,x) = X(a Q(x)).

    Q is the a-linear part, X the top a-degree part of each coefficient.
    """
    K = family.K
    q = [Fraction(0)] * (K + 1)
    X = [Fraction(0)] * (K + 1)
    for n, c in enumerate(family.coeffs):
        if not c:
            continue
        deg = c.degree("a")
        X[n] = sum((v for e, v in c.terms.items() if e[c.vars.index("a")] == deg), Fraction(0)) if deg == n else Fraction(0)
        q[n] = sum((v for e, v in c.terms.items() if e[c.vars.index("a")] == 1), Fraction(0))
    return TruncatedSeries._raw(q, K, QQ), TruncatedSeries._raw(X, K, QQ)
