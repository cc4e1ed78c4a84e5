"""Command-line front end: profiles, forge runs, certificate checking,
descent traces, and model witness tables, all with exact JSON/CSV output.

Exit codes: 0 success / all checks pass, 1 certificate or property
failure, 2 usage or configuration error.  No decimal floats appear in
any output unless --approx adds a clearly marked non-authoritative
column.  Outputs are written atomically and are byte-identical for
identical configurations and seeds.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from fractions import Fraction

from . import fields, forge, gauss, models, ratfun
from .errors import ParseError, UltranormError
from .logval import INF, LogValue, lv, parse_logvalue
from .parse import parse_ratfun

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ultranorm-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path, text: str) -> None:
    if path:
        _write_atomic(path, text)
    else:
        sys.stdout.write(text)


def _parse_interval(text: str) -> gauss.RadiusInterval:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("interval must be two comma-separated log-values")
    return gauss.RadiusInterval(parse_logvalue(parts[0]),
                                parse_logvalue(parts[1]))


def _approx(v: LogValue) -> str:
    if v.infinite:
        return "inf"
    return repr(float(v.a) + float(v.b) * 2.0 ** 0.5)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_profile(args) -> int:
    field = fields.parse_descriptor(args.field)
    interval = _parse_interval(args.interval)
    f = parse_ratfun(field, args.f)
    center = fields.parse_element(field, args.center) if args.center else None
    profile = gauss.norm_profile(f, interval, center=center)
    rows = ["s_a,s_b,value_a,value_b,slope"]
    for s, value, slope in profile.knots():
        row = f"{s.a},{s.b},{value.a},{value.b},{slope}"
        if args.approx:
            row += f",{_approx(s)},{_approx(value)}"
        rows.append(row)
    if args.approx:
        rows[0] += ",s_approx_NONAUTHORITATIVE,value_approx_NONAUTHORITATIVE"
    _emit(args.out, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_forge(args) -> int:
    field = fields.parse_descriptor(args.field)
    interval = _parse_interval(args.interval)
    c_log = parse_logvalue(args.clog)
    sch = forge.make_schedule(field, interval, c_log, args.mode, args.depth,
                              m_hint=args.m_hint)
    centers = forge.choose_centers(sch)
    cert = forge.verify_certificate(sch, centers, raise_on_failure=False)
    _emit(args.out, forge.certificate_json_text(cert))
    if not cert.all_pass:
        print(f"certificate FAILED: {cert.first_failure()}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"certificate: {len(cert.records)} records, all pass",
          file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    with open(args.certificate) as handle:
        data = json.load(handle)
    problems = forge.check_certificate_data(data)
    if problems:
        for p in problems:
            print(f"check: {p}", file=sys.stderr)
        return EXIT_FAILURE
    print("certificate verified: all records reproduce exactly",
          file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    field = fields.parse_descriptor(args.field)
    interval = _parse_interval(args.interval)
    c_log = parse_logvalue(args.clog)
    model = forge.GaussIntervalOracle(field, interval,
                                      centered_augmented=args.centered)
    if args.force_failure:
        oracle = forge.ForcedFailureOracle(field)
        oracle.spect_range = model.spect_range
    else:
        oracle = model
    t0 = parse_ratfun(field, args.t)
    trace = forge.interval_search(oracle, t0, c_log, args.steps)
    payload = {
        "outcome": trace.outcome,
        "rows": [{"iteration": r.iteration,
                  "mu": fields.element_to_text(r.mu),
                  "gamma_v": r.gamma_v.to_json(),
                  "delta_v": r.delta_v.to_json(),
                  "lambda": (fields.element_to_text(r.lam)
                             if r.lam is not None else None)}
                 for r in trace.rows],
    }
    if trace.outcome == "success":
        payload["triple"] = {"t": str(trace.t_final),
                             "gamma_v": trace.gamma_v.to_json(),
                             "delta_v": trace.delta_v.to_json()}
    _emit(args.out, json.dumps(payload, sort_keys=True,
                               separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_qseries(args) -> int:
    table = models.qseries_unbounded_witness(args.kmax)
    payload = {"witness": [{"k": k, "j": j} for k, j in table]}
    failures = 0
    if args.checks:
        rng = random.Random(args.seed)
        for _ in range(args.checks):
            x = _random_qseries(rng)
            y = _random_qseries(rng)
            prod = x * y
            if prod.is_zero:
                continue
            if models.qseries_norm(prod) < \
                    models.qseries_norm(x) + models.qseries_norm(y):
                failures += 1
        payload["submultiplicative_checks"] = args.checks
        payload["submultiplicative_failures"] = failures
    _emit(args.out, json.dumps(payload, sort_keys=True,
                               separators=(",", ":")) + "\n")
    return EXIT_FAILURE if failures else EXIT_OK


def _random_qseries(rng) -> models.QSeriesElement:
    terms = []
    for _ in range(rng.randint(1, 4)):
        n = rng.randint(-3, 5)
        num = rng.randint(-8, 8)
        den = rng.choice([1, 2, 3, 4, 6, 8, 24])
        if num:
            terms.append((n, Fraction(num, den)))
    return models.qseries(terms or [(0, 1)])


def cmd_annulus(args) -> int:
    field = fields.parse_descriptor(args.field)
    s = parse_logvalue(args.radius)
    prec = parse_logvalue(args.prec)
    f = parse_ratfun(field, args.x)
    if f.den.degree != 0 or f.num.is_zero:
        raise ParseError("annulus input must be a nonzero polynomial in T")
    den_inv = fields.invert(f.den.coeffs[0])
    terms = [(i, c * den_inv) for i, c in enumerate(f.num.coeffs)
             if not c.is_zero]
    x = models.annulus_element(field, s, terms)
    y = models.annulus_invert(x, prec)
    residual = x * y - models.annulus_element(
        field, s, [(0, fields.one(field))])
    res_v = residual.norm_exponent()
    payload = {
        "radius": s.to_json(),
        "requested_prec": prec.to_json(),
        "inverse_terms": [{"power": n, "coef": fields.element_to_text(c)}
                          for n, c in y.terms],
        "residual_valuation": res_v.to_json(),
        "residual_exceeds_prec": bool(res_v > prec),
    }
    _emit(args.out, json.dumps(payload, sort_keys=True,
                               separators=(",", ":")) + "\n")
    return EXIT_OK if res_v > prec else EXIT_FAILURE


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultranorm",
        description="exact nonarchimedean seminorms and counterexample "
                    "certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="piecewise-linear Gauss norm profile")
    p.add_argument("--f", required=True, help="rational function in t")
    p.add_argument("--interval", required=True, help="s_lo,s_hi (log radii)")
    p.add_argument("--field", default="genlaurent:3")
    p.add_argument("--center", default=None)
    p.add_argument("--approx", action="store_true",
                   help="append non-authoritative decimal columns")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("forge", help="build and verify a certificate")
    p.add_argument("--mode", choices=[forge.MODE_THEOREM, forge.MODE_EXAMPLE],
                   required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--interval", required=True)
    p.add_argument("--clog", required=True)
    p.add_argument("--m-hint", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_forge)

    p = sub.add_parser("check", help="re-validate a certificate file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="interval descent trace")
    p.add_argument("--field", required=True)
    p.add_argument("--interval", required=True)
    p.add_argument("--clog", required=True)
    p.add_argument("--t", default="t", help="starting element (default t)")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--force-failure", action="store_true",
                   help="drive the descent with the always-violating oracle")
    p.add_argument("--centered", action="store_true",
                   help="adjoin the centered Gauss family to the model")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("qseries", help="unboundedness witness table")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--checks", type=int, default=0,
                   help="random submultiplicativity checks to run")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_qseries)

    p = sub.add_parser("annulus", help="truncated inversion demo")
    p.add_argument("--field", default="padic:2")
    p.add_argument("--radius", default="sqrt2")
    p.add_argument("--prec", default="5")
    p.add_argument("--x", required=True, help="polynomial in T to invert")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_annulus)
    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"ultranorm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UltranormError as exc:
        print(f"ultranorm: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
