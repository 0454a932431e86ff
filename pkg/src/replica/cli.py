"""Command-line front end: replica <verb> [options].

Every verb prints exact values only; `radius` is the one place floats appear.
Usage errors exit with 2, failed verifications with 1.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .exact import CyclotomicElem, ParamPolynomial, parse_rational, rational_str
from .series import PuiseuxBranch, TruncatedSeries

FORMATS = ("json", "csv", "pretty")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ output

def _cstr(c):
    if isinstance(c, (int, Fraction)):
        return rational_str(Fraction(c))
    return str(c)


def _rows(s):
    if isinstance(s, PuiseuxBranch):
        s = s.body
    return [(k, _cstr(c)) for k, c in enumerate(s.coeffs) if not s.ring.is_zero(c)]


def emit_series(out, fmt, s, title, meta=None):
    rows = _rows(s)
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        for r in rows:
            w.writerow(r)
    elif fmt == "json":
        K = s.body.K if isinstance(s, PuiseuxBranch) else s.K
        ring = (s.body if isinstance(s, PuiseuxBranch) else s).ring.name
        doc = {"series": title, "ring": ring, "order": K, "coefficients": [[k, c] for k, c in rows]}
        if isinstance(s, PuiseuxBranch):
            doc["ram"] = s.N
        doc.update(meta or {})
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        out.write(f"{title}\n")
        for k, v in (meta or {}).items():
            out.write(f"  {k}: {v}\n")
        for k, c in rows:
            out.write(f"  x^{k}: {c}\n")


def emit_doc(out, fmt, doc):
    if fmt == "json":
        out.write(json.dumps(doc, indent=1) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        for k, v in doc.items():
            w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    else:
        for k, v in doc.items():
            out.write(f"{k}: {v}\n")


# ----------------------------------------------------------------- parsing

def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _order(text):
    try:
        K = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}") from exc
    if K < 1:
        raise argparse.ArgumentTypeError("order must be at least 1")
    return K


def _prime_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return int(lo), int(hi)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad prime range {text!r}") from exc
    try:
        return [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from exc


def _fspec(text):
    from .special import FSpec, FSpecError
    try:
        return FSpec.parse(text)
    except FSpecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser():
    p = argparse.ArgumentParser(prog="replica", description="Exact series for Schwarzian equations and modular correspondences.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, order=True):
        sp.add_argument("--format", choices=FORMATS, default="pretty")
        if order:
            sp.add_argument("--order", type=_order, default=10)

    sp = sub.add_parser("series", help="F, W, nome or mirror map for an F specification")
    sp.add_argument("--name", choices=("F", "W", "nome", "mirror"), required=True)
    sp.add_argument("--f", type=_fspec, default="elliptic")
    sp.add_argument("--alpha", type=_rational, default=Fraction(0))
    common(sp)

    sp = sub.add_parser("oneparam", help="one-parameter family y(a, x)")
    sp.add_argument("--f", type=_fspec, default="elliptic")
    sp.add_argument("--a", type=_rational, default=None, help="specialize the parameter")
    common(sp)

    sp = sub.add_parser("twoparam", help="two-parameter family Y(a, b, x) at alpha = 1")
    sp.add_argument("--f", type=_fspec, default="elliptic")
    sp.add_argument("--a", type=_rational, default=None)
    sp.add_argument("--b", type=_rational, default=None)
    common(sp)

    sp = sub.add_parser("correspondence", help="degree-N correspondence series")
    sp.add_argument("--f", type=_fspec, default="elliptic")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=_rational, default=Fraction(1))
    common(sp)

    sp = sub.add_parser("epsilon", help="B_1..B_M of the expansion around a = 1")
    sp.add_argument("--f", type=_fspec, default="elliptic")
    sp.add_argument("--m", type=int, default=5)
    common(sp)

    sp = sub.add_parser("modcheck", help="catalog curve of degree N against X(Q^N)")
    sp.add_argument("--n", required=True)
    common(sp)

    sp = sub.add_parser("pcurv", help="p-curvature of F(x) D - 1")
    sp.add_argument("--f", type=_fspec, required=True)
    sp.add_argument("--primes", type=_prime_range, default=(2, 101))
    common(sp, order=False)

    sp = sub.add_parser("radius", help="coefficient-ratio radius estimate")
    sp.add_argument("--series", choices=("nome", "mirror"), required=True)
    sp.add_argument("--f", type=_fspec, default="elliptic")
    sp.add_argument("--terms", type=_order, default=64)
    sp.add_argument("--window", type=int, default=10)
    common(sp, order=False)

    sp = sub.add_parser("modp", help="reduce a named series mod p")
    sp.add_argument("--series", choices=("sigma", "a3", "nome", "mirror"), required=True)
    sp.add_argument("--p", type=int, required=True)
    common(sp)

    sp = sub.add_parser("verify-all", help="check every transcribed table")
    sp.add_argument("--with-radius", action="store_true", help="include the 421-term ratio test (slow)")
    common(sp)
    return p


# ------------------------------------------------------------------- verbs

def _specialized(series, **values):
    from .schwarzian import specialize
    vals = {k: v for k, v in values.items() if v is not None}
    if not vals:
        return series
    s = specialize(series, vals)
    if any(isinstance(c, ParamPolynomial) for c in s.coeffs):
        from .exact import PolyRing
        left = sorted({v for c in s.coeffs if isinstance(c, ParamPolynomial) for v in c.used_vars()})
        s = TruncatedSeries([c if isinstance(c, ParamPolynomial) else ParamPolynomial.const(c, tuple(left))
                             for c in s.coeffs], s.K, PolyRing(tuple(left)))
    return s


def cmd_series(args, out):
    from .special import WSpec, build_F, nome_from_f, w_from_f
    K, f = args.order, args.f
    if args.name == "F":
        s = build_F(f, K)
    elif args.name == "W":
        W = w_from_f(WSpec(f, args.alpha), K + 2)
        emit_doc(out, args.format, {"series": "W", "laurent_terms": [[e, _cstr(c)] for e, c in sorted(W.terms().items())],
                                    "known_through": K})
        return 0
    else:
        if f.squared:
            raise UsageError("nome needs F itself; the Heun case only provides 81 F^2")
        Q = nome_from_f(build_F(f, K), K)
        s = Q if args.name == "nome" else Q.revert()
    emit_series(out, args.format, s, args.name, {"F": f.label})
    return 0


def _problem(f, K, alpha=0):
    from .schwarzian import SchwarzianProblem
    return SchwarzianProblem.from_spec(f, K, alpha=alpha)


def cmd_oneparam(args, out):
    from .schwarzian import solve_one_param
    sol = solve_one_param(_problem(args.f, args.order))
    emit_series(out, args.format, _specialized(sol.series, a=args.a), "y(a, x)", {"F": args.f.label})
    return 0


def cmd_twoparam(args, out):
    from .schwarzian import solve_two_param
    sol = solve_two_param(_problem(args.f, args.order, alpha=1))
    emit_series(out, args.format, _specialized(sol.series, a=args.a, b=args.b), "Y(a, b, x)",
                {"F": args.f.label, "free": [f"{n} at x^{m}" for m, n in sol.ledger]})
    return 0


def cmd_correspondence(args, out):
    from .exact import QQ
    from .schwarzian import solve_family
    if args.n < 1:
        raise UsageError("--n must be positive")
    pr = _problem(args.f, args.order)
    pr.ring = QQ
    sol = solve_family(pr, args.n, lead=args.a)
    emit_series(out, args.format, sol.series, f"y_{args.n}", {"F": args.f.label, "a": rational_str(args.a)})
    return 0


def cmd_epsilon(args, out):
    from .special import build_F
    from .schwarzian import epsilon_family
    B = epsilon_family(build_F(args.f, args.order), args.m, args.order)
    if args.format == "json":
        doc = {f"B_{n + 1}": [[k, _cstr(c)] for k, c in _rows(b)] for n, b in enumerate(B)}
        emit_doc(out, "json", doc)
    else:
        for n, b in enumerate(B):
            emit_series(out, args.format if args.format == "pretty" else "csv", b, f"B_{n + 1}")
    return 0


def cmd_modcheck(args, out):
    from .modular import (catalog_entry, correspondence_by_composition, first_nonzero_order,
                          parametrization_to_series, verify_curve)
    key = args.n if args.n == "landen" else int(args.n)
    try:
        entry = catalog_entry(key)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    K = args.order
    doc = {"N": args.n, "order": K}
    ok = True
    if key == "landen":
        from .modular import landen_check
        r = landen_check(K)
        doc["gamma_residual_first_nonzero"] = first_nonzero_order(r)
        ok = r.is_zero()
    else:
        _, _, yx = parametrization_to_series(entry, K)
        ref = correspondence_by_composition(key, K)
        diff = yx - ref
        doc["parametrization_vs_composition_first_nonzero"] = first_nonzero_order(diff)
        ok = diff.is_zero()
        if entry.gamma is not None:
            x = TruncatedSeries.x(K)
            r = verify_curve(entry.gamma, x, ref)
            doc["gamma_residual_first_nonzero"] = first_nonzero_order(r)
            ok = ok and r.is_zero()
    doc["ok"] = ok
    emit_doc(out, args.format, doc)
    return 0 if ok else 1


def cmd_pcurv(args, out):
    from .probe import OperatorOrderOne, p_curvature_scan, primes_between
    f = args.f
    if f.variant != "polynomial":
        raise UsageError("pcurv needs a polynomial F (poly:... or poly-factored:...)")
    pr = args.primes
    primes = primes_between(*pr) if isinstance(pr, tuple) else pr
    res = p_curvature_scan(OperatorOrderOne.nome_operator(f.payload), primes)
    emit_doc(out, args.format, res)
    return 0


def cmd_radius(args, out):
    from .probe import InsufficientTerms, radius_estimate
    from .special import build_F, nome_from_f
    K = args.terms
    if args.f.squared:
        raise UsageError("radius needs F itself, not 81 F^2")
    Q = nome_from_f(build_F(args.f, K), K)
    s = Q if args.series == "nome" else Q.revert()
    try:
        rep = radius_estimate(s, args.window)
    except InsufficientTerms as exc:
        raise UsageError(str(exc)) from exc
    doc = {"series": args.series, "terms": K,
           "estimate": f"{rep.estimate:.12g}", "window_mean": f"{rep.window_mean:.12g}",
           "trace": [[n, f"{r:.12g}"] for n, r in rep.trace]}
    emit_doc(out, args.format, doc)
    return 0


def cmd_modp(args, out):
    from .probe import reduce_mod_p, sigma_check, elliptic_family_at
    from .exact import BadReduction, _is_prime
    from .special import build_F, nome_from_f
    if not _is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    K = args.order
    meta = {"p": args.p}
    if args.series == "sigma":
        rep = sigma_check(K)
        s = rep.sigma
        meta["quadratic_residual_zero"] = not rep.residual_support
    elif args.series == "a3":
        s = elliptic_family_at(3, K)
    else:
        Q = nome_from_f(build_F("elliptic", K), K)
        s = Q if args.series == "nome" else Q.revert()
    try:
        red = reduce_mod_p(s, args.p)
    except BadReduction as exc:
        emit_doc(out, args.format, {"series": args.series, "p": args.p, "bad_reduction_at": exc.index})
        return 1
    rows = [[k, c] for k, c in enumerate(red.coeffs) if c]
    doc = {"series": args.series, "order": K, **meta, "support": [k for k, _ in rows], "coefficients": rows}
    emit_doc(out, args.format, doc)
    return 0


def cmd_verify_all(args, out):
    from .verify import run_all
    results = run_all(args.order, with_radius=args.with_radius)
    failed = None
    lines = []
    for r in results:
        lines.append(r)
        if r["status"] == "fail" and failed is None:
            failed = r
    if args.format == "json":
        out.write(json.dumps({"order": args.order, "checks": lines}, indent=1) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        for r in lines:
            w.writerow([r["check"], r["fixture"], r["status"], r.get("order", ""), r.get("detail", "")])
    else:
        for r in lines:
            extra = f" [{r['detail']}]" if r.get("detail") else ""
            out.write(f"{r['status']:>8}  {r['check']}  {r['fixture']}{extra}\n")
    if failed:
        sys.stderr.write(f"first failure: {failed['fixture']} at order {failed.get('order')}\n")
        return 1
    return 0


VERBS = {"series": cmd_series, "oneparam": cmd_oneparam, "twoparam": cmd_twoparam,
         "correspondence": cmd_correspondence, "epsilon": cmd_epsilon, "modcheck": cmd_modcheck,
         "pcurv": cmd_pcurv, "radius": cmd_radius, "modp": cmd_modp, "verify-all": cmd_verify_all}


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    buf = io.StringIO()
    try:
        code = VERBS[args.verb](args, buf)
    except UsageError as exc:
        sys.stderr.write(f"replica {args.verb}: {exc}\n")
        return 2
    out.write(buf.getvalue())
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
