"""Command-line front end: ``nhairy <command> [flags]``.

Every command prints one report (JSON by default) to stdout; diagnostics
go to stderr.  Exit status is 0 on success, 1 when a requested check
fails, 2 for invalid flags and 3 for numeric failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from .errors import NhairyError
from .laurent import walk_zeros
from .series import Parameters, double_zero_solution, principal_solution, recenter, residual_check, to_mp
from .special import (
    Hyp1F2Args,
    LommelParams,
    airy_homogeneous,
    hyp1f2,
    lommel_polya_form,
    lommel_integral,
    lommel_series,
    polya_weight,
    scorer,
)
from .transforms import (
    TransformSpec,
    apply_transform,
    energy_identity_residual,
    identity_transform_residual,
    interval_energy,
    map_params,
    verify_homogeneity,
    verify_quasi_periodicity,
)
from .zeros import asymptotic_modulus, classify_families, disk_zeros, polya_interval, ray_zeros, real_zeros

DEFAULT_PRECISION = 60
EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CHECKS = ("transform", "quasiperiod", "homogeneity", "energy", "scorer", "polya", "lommel")


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    params: dict
    settings: dict
    results: object = None
    diagnostics: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    passed: bool = True


# ---------------------------------------------------------------- formatting

def fmt(x, digits):
    """{re, im} decimal strings with ``digits`` significant digits."""
    x = mp.mpmathify(x)
    return {"re": mp.nstr(mp.re(x), digits), "im": mp.nstr(mp.im(x), digits)}


def fmt_real(x, digits=4):
    return float(f"{float(x):.{digits}g}")


def _flat(x, digits):
    x = mp.mpmathify(x)
    if mp.im(x) == 0:
        return mp.nstr(mp.re(x), digits)
    return mp.nstr(x, digits)


def render(report: Report, form: str, walltime_ms: float) -> str:
    if form == "json":
        body = {
            "command": report.command,
            "params": report.params,
            "settings": report.settings,
            "results": report.results,
            "diagnostics": report.diagnostics,
            "walltime_ms": round(walltime_ms, 1),
        }
        return json.dumps(body, indent=2)
    if not report.rows:
        return ""
    if form == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(report.rows[0]), lineterminator="\r\n")
        writer.writeheader()
        writer.writerows(report.rows)
        return buf.getvalue().rstrip("\r\n")
    keys = list(report.rows[0])
    widths = [max(len(k), *(len(str(r[k])) for r in report.rows)) for k in keys]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(str(r[k]).ljust(w) for k, w in zip(keys, widths)) for r in report.rows]
    lines += [f"# {d}" for d in report.diagnostics]
    return "\n".join(lines)


# ---------------------------------------------------------------- argument parsing

def _complex_arg(text):
    try:
        return mp.mpmathify(text.strip().replace("i", "j"))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _interval(text):
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from exc
    if not lo < hi:
        raise argparse.ArgumentTypeError("need LO < HI")
    return lo, hi


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def default_precision() -> int:
    value = os.environ.get("NHAIRY_DIGITS")
    if value is None:
        return DEFAULT_PRECISION
    try:
        return max(30, int(value))
    except ValueError:
        raise UsageError(f"NHAIRY_DIGITS must be an integer, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=str, default="1", help="coefficient of z (default 1)")
    common.add_argument("--b", type=str, default="0", help="constant coefficient (default 0)")
    common.add_argument("--c", type=str, default="0", help="inhomogeneity (default 0)")
    common.add_argument("--deriv", type=str, default="1", help="S'(0) normalisation (default 1)")
    common.add_argument("--digits", type=_positive_int, default=15, help="printed significant digits")
    common.add_argument("--precision", type=_positive_int, default=None,
                        help=f"working precision in digits (default {DEFAULT_PRECISION} or $NHAIRY_DIGITS)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")

    parser = argparse.ArgumentParser(prog="nhairy", description="Solutions and zeros of y'' = (az+b)y + c.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", parents=[common], help="zeros on a real interval, on the rays, or in a disk")
    region = p.add_mutually_exclusive_group(required=True)
    region.add_argument("--real", type=_interval, metavar="LO:HI")
    region.add_argument("--rays", action="store_true", help="zero triples of the double-zero solution (b = 0)")
    region.add_argument("--disk", type=float, metavar="R", help="all zeros in |z| < R")
    p.add_argument("--double-at", type=str, default=None, metavar="P",
                   help="use the solution with a double zero at P instead of S(0)=0, S'(0)=deriv")
    p.add_argument("--max-k", type=_positive_int, default=10)
    p.add_argument("--tol", type=float, default=1e-30)

    p = sub.add_parser("laurent-walk", parents=[common], help="walk from zero to zero by the ratio limit")
    p.add_argument("--terms", type=_positive_int, default=80)
    p.add_argument("--max-terms", type=_positive_int, default=None,
                   help="allow N to double up to this cap (default 4 * terms)")
    p.add_argument("--steps", type=_positive_int, default=3)
    p.add_argument("--beta-rule", choices=("half", "literal"), default="half")

    p = sub.add_parser("table-za", parents=[common], help="exact vs asymptotic zero moduli of Xi(., 1, 0)")
    p.add_argument("--max-k", type=_positive_int, default=20)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--check", choices=CHECKS, action="append")
    which.add_argument("--all", action="store_true")
    p.add_argument("--lambda", dest="lam", type=str, default="2")

    p = sub.add_parser("scorer", parents=[common], help="Scorer function Hi or Gi")
    p.add_argument("--kind", choices=("Hi", "Gi"), required=True)
    p.add_argument("--z", type=_complex_arg, required=True)

    p = sub.add_parser("hyp1f2", parents=[common], help="generalised hypergeometric 1F2")
    p.add_argument("--a1", type=str, required=True)
    p.add_argument("--b1", type=str, required=True)
    p.add_argument("--b2", type=str, required=True)
    p.add_argument("--x", type=_complex_arg, required=True)
    return parser


def _parameters(args) -> Parameters:
    try:
        return Parameters(args.a, args.b, args.c, args.deriv)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _params_echo(params: Parameters, digits):
    with mp.workdps(max(digits, 15) + 5):
        a, b, c = params.triple()
        return {"a": fmt(a, digits), "b": fmt(b, digits), "c": fmt(c, digits), "deriv": fmt(params.deriv, digits)}


def _zero_entry(record, digits):
    return {"location": fmt(record.location, digits), "multiplicity": record.multiplicity,
            "residual": fmt_real(record.residual), "method": record.method}


def _zero_row(record, digits):
    return {"re": mp.nstr(mp.re(record.location), digits), "im": mp.nstr(mp.im(record.location), digits),
            "modulus": mp.nstr(abs(record.location), digits), "multiplicity": record.multiplicity,
            "residual": f"{record.residual:.3g}", "method": record.method}


# ---------------------------------------------------------------- commands

def cmd_zeros(args, report: Report, precision: int):
    params = _parameters(args)
    digits = args.digits
    eps = mp.mpf(10) ** (-(precision // 2))
    with mp.workdps(precision):
        if args.rays:
            a, b, c = params.triple()
            if b != 0:
                raise UsageError("--rays needs b = 0")
            if args.double_at is not None and to_mp(args.double_at) != 0:
                raise UsageError("--rays describes the double zero at the origin")
            records = ray_zeros(a, args.max_k, tol=args.tol, precision=precision)
            family = "particular"
            report.settings["max_k"] = args.max_k
            results = []
            for k in range(args.max_k):
                triple = records[3 * k: 3 * k + 3]
                iv = polya_interval(k + 1)
                results.append({"k": k + 1, "interval": [fmt_real(iv.lo, 10), fmt_real(iv.hi, 10)],
                                "zeros": [_zero_entry(r, digits) for r in triple]})
            report.rows = [dict(k=1 + i // 3, **_zero_row(r, digits)) for i, r in enumerate(records)]
            report.results = {"family": family, "double_zero": fmt(0, digits), "triples": results}
            return
        reach = (max(abs(args.real[0]), abs(args.real[1])) if args.real else args.disk) + 1.5
        if args.double_at is not None:
            p = to_mp(args.double_at)
            series = double_zero_solution(params, float(abs(p)) + reach, center=p, precision=precision)
            if p != 0:
                series = recenter(series, 0, radius=reach)
            family = "particular"
            dropped = None
        else:
            series = principal_solution(params, reach, precision)
            family = None
            dropped = mp.mpf(0)
        if args.real:
            if any(mp.im(x) != 0 for x in params.triple()) or mp.im(params.deriv) != 0:
                raise UsageError("--real needs real parameters")
            lo, hi = args.real
            records = real_zeros(series, lo, hi, tol=args.tol)
            report.settings["real"] = [lo, hi]
        else:
            records = disk_zeros(series, 0, args.disk)
            report.settings["disk"] = args.disk
        if dropped is not None:
            # the normalisation zero at the origin is not reported
            records = [r for r in records if abs(r.location - dropped) > eps]
        if family is None:
            family = "particular" if any(r.multiplicity > 1 for r in records) else "principal"
            if family == "principal":
                report.diagnostics.append("family: no double zero in the searched region")
        report.results = {"family": family, "zeros": [_zero_entry(r, digits) for r in records]}
        report.rows = [_zero_row(r, digits) for r in records]


def cmd_laurent_walk(args, report: Report, precision: int):
    params = _parameters(args)
    digits = args.digits
    max_terms = args.max_terms or 4 * args.terms
    report.settings.update(terms=args.terms, max_terms=max_terms, steps=args.steps, beta_rule=args.beta_rule)
    precision = max(precision, 30 + (args.terms + 1) // 2) if args.precision is None else precision
    report.settings["precision"] = precision
    state = walk_zeros(params, args.steps, args.terms, precision, beta_rule=args.beta_rule, max_terms=max_terms)
    steps = []
    for record in state.steps:
        steps.append({"zero": fmt(record.zero, digits), "step": fmt(record.step, digits),
                      "terms": len(record.sequence) - 2, "ratio_spread": fmt_real(record.spread),
                      "newton_distance": fmt_real(record.newton_distance), "verified": record.verified})
    report.results = {"start": fmt(0, digits), "steps": steps, "walk": state.diagnostics}
    report.diagnostics += [f"walk: {state.diagnostics}"] + state.messages
    report.rows = [{"step": i + 1, "re": s["zero"]["re"], "im": s["zero"]["im"], "terms": s["terms"],
                    "ratio_spread": s["ratio_spread"], "verified": s["verified"]} for i, s in enumerate(steps)]


def cmd_table_za(args, report: Report, precision: int):
    report.settings["max_k"] = args.max_k
    with mp.workdps(precision):
        records = ray_zeros(1, args.max_k, precision=precision, polish=False)
        rows = []
        for k in range(1, args.max_k + 1):
            exact = abs(records[3 * (k - 1)].location)
            approx = asymptotic_modulus(k)
            rel = abs(1 - approx / exact)
            rows.append({"k": k, "exact": mp.nstr(exact, args.digits), "asymptotic": mp.nstr(approx, args.digits),
                         "rel_err": f"{float(rel):.3e}", "bound_claimed": k > 3,
                         "within_bound": bool(rel < 0.01) if k > 3 else None})
    report.rows = rows
    report.results = rows
    bad = [r["k"] for r in rows if r["within_bound"] is False]
    if bad:
        report.passed = False
        report.diagnostics.append(f"relative error >= 0.01 for k = {bad}")


def _check_transform(params, lam, precision):
    with mp.workdps(precision):
        zeros = [r.location for r in disk_zeros(principal_solution(params, 7.5, precision), 0, 6.0)
                 if abs(r.location) > mp.mpf(10) ** (-(precision // 2))]
        zeros.sort(key=abs)
        if not zeros:
            return False, float("nan"), "no nonzero zero within |z| < 6"
        points = [mp.mpf(k) / 3 + 0.25j for k in range(-5, 5)]
        residual = identity_transform_residual(params, 0, zeros[0], points, precision)
        spec = TransformSpec(mp.mpf(3) / 2, mp.mpf(1) / 2)
        source = principal_solution(map_params(spec, params), 2.0, precision)
        image = apply_transform(spec, params, source)
        ode = max(residual_check(image, image.center + mp.mpf(k) / 5) for k in range(-5, 5))
        worst = max(residual, float(ode))
        return worst < 1e-20, worst, f"identity transform to xi_1 = {mp.nstr(zeros[0], 10)}; ODE residual of T_(3/2, 1/2)"


def _check_quasiperiod(params, lam, precision):
    report = verify_quasi_periodicity(params, 1, 3, tol=1e-20, precision=max(40, precision))
    return True, report.max_distance, f"shift {mp.nstr(report.shift, 12)}, {report.compared} zeros compared"


def _check_homogeneity(params, lam, precision):
    a, b, _ = params.triple()
    points = [mp.mpf(k) / 2 + 0.3j for k in range(-4, 5)]
    report = verify_homogeneity(a, b, lam, points, tol=1e-30, precision=max(40, precision))
    return report.passed, report.max_residual, f"lambda = {mp.nstr(to_mp(lam), 8)}, {report.points} points"


def _check_energy(params, lam, precision):
    a, b, c = params.triple()
    if any(mp.im(x) != 0 for x in (a, b, c)):
        return False, float("nan"), "energy identity needs real parameters"
    worst = max(energy_identity_residual(a, b, c, z, precision=precision) for z in (0.5, 1, 2))
    positive = all(interval_energy(a, b, p, precision=precision) > 0 for p in (-5, -2, -1, 1, 2, 5))
    return worst < 1e-12 and positive, worst, f"integral of Xi^2 positive: {positive}"


def _check_scorer(params, lam, precision):
    with mp.workdps(precision):
        worst = max(abs(scorer("Gi", z, precision) + scorer("Hi", z, precision) - airy_homogeneous("Bi", z, precision))
                    for z in (-2, -1, 0, 1, 2))
    return worst < 1e-20, float(worst), "Gi + Hi - Bi on z = -2..2"


def _check_polya(params, lam, precision):
    worst = 0.0
    for nu in (0.1, 1 / 3, 0.7):
        t = np.linspace(0, 1, 10002)[1:-1]
        s = np.arcsin(t)
        w = (np.cos(nu * s) + np.cos(nu * np.pi - nu * s)) / np.sqrt(1 - t * t)
        increments = np.diff(w)
        if not (np.all(w > 0) and np.all(increments > 0)):
            return False, float("nan"), f"weight not positive increasing for nu = {nu}"
        # spot check the vectorised weight against the multiprecision one
        worst = max(worst, abs(float(polya_weight(nu, t[5000], 30)) - w[5000]))
    return True, worst, "nu in {0.1, 1/3, 0.7}, 10^4 points"


def _check_lommel(params, lam, precision):
    worst = mp.mpf(0)
    for nu in ("0.1", "1/3", "0.7"):
        nu_val = mp.mpf(1) / 3 if nu == "1/3" else mp.mpf(nu)
        for z in (0.5, 2, 5):
            s = lommel_series(LommelParams(0, nu_val), z, precision)
            worst = max(worst, abs(s - lommel_integral(nu_val, z, 1e-25, precision)),
                        abs(s - lommel_polya_form(nu_val, z, 1e-25, precision)))
    return worst < 1e-15, float(worst), "series vs both integral forms"


_CHECKERS = {
    "transform": _check_transform,
    "quasiperiod": _check_quasiperiod,
    "homogeneity": _check_homogeneity,
    "energy": _check_energy,
    "scorer": _check_scorer,
    "polya": _check_polya,
    "lommel": _check_lommel,
}


def cmd_verify(args, report: Report, precision: int):
    params = _parameters(args)
    names = list(CHECKS) if args.all else list(dict.fromkeys(args.check))
    try:
        lam = to_mp(args.lam)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--lambda: {exc}") from exc
    report.settings.update(checks=names, **{"lambda": fmt(lam, args.digits)})
    results = []
    for name in names:
        try:
            ok, residual, detail = _CHECKERS[name](params, lam, precision)
        except NhairyError as exc:
            ok, residual, detail = False, float("nan"), f"{type(exc).__name__}: {exc}"
        entry = {"check": name, "passed": bool(ok),
                 "max_residual": None if residual != residual else fmt_real(residual), "detail": detail}
        results.append(entry)
        if not ok:
            report.passed = False
            report.diagnostics.append(f"{name} failed: {detail}")
    report.results = results
    report.rows = [{k: ("" if v is None else v) for k, v in r.items()} for r in results]


def cmd_scorer(args, report: Report, precision: int):
    value = scorer(args.kind, args.z, precision)
    report.settings.update(kind=args.kind, z=fmt(args.z, args.digits))
    report.results = {"value": fmt(value, args.digits)}
    report.rows = [{"kind": args.kind, "z": _flat(args.z, args.digits), "value": _flat(value, args.digits)}]


def cmd_hyp1f2(args, report: Report, precision: int):
    try:
        hyp_args = Hyp1F2Args(*(_fraction_or_number(v) for v in (args.a1, args.b1, args.b2)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    value = hyp1f2(hyp_args, args.x, precision)
    report.settings.update(a1=args.a1, b1=args.b1, b2=args.b2, x=fmt(args.x, args.digits))
    report.results = {"value": fmt(value, args.digits)}
    report.rows = [{"x": _flat(args.x, args.digits), "value": _flat(value, args.digits)}]


def _fraction_or_number(text):
    try:
        return Fraction(text)
    except ValueError:
        return to_mp(text)


COMMANDS = {
    "zeros": cmd_zeros,
    "laurent-walk": cmd_laurent_walk,
    "table-za": cmd_table_za,
    "verify": cmd_verify,
    "scorer": cmd_scorer,
    "hyp1f2": cmd_hyp1f2,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        precision = args.precision or default_precision()
        if args.command in ("zeros", "laurent-walk", "verify"):
            params_echo = _params_echo(_parameters(args), args.digits)
        else:
            params_echo = {}
        report = Report(args.command, params_echo,
                        {"digits": args.digits, "terms": getattr(args, "terms", None), "precision": precision})
        COMMANDS[args.command](args, report, precision)
    except UsageError as exc:
        parser.error(str(exc))
    except (NhairyError, ZeroDivisionError, OverflowError) as exc:
        print(f"nhairy: numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        report = locals().get("report") or Report(args.command, {}, {})
        report.diagnostics.append(f"{type(exc).__name__}: {exc}")
        print(render(report, args.format, (time.perf_counter() - start) * 1e3))
        return EXIT_NUMERIC
    for line in report.diagnostics:
        print(line, file=sys.stderr)
    print(render(report, args.format, (time.perf_counter() - start) * 1e3))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
