"""
valconv command line: Lie-algebra checks, form and valuation convolution,
the S^3 tables and the seeded property suites.

Exit codes: 0 success, 1 identity or property violation, 2 invalid input.
"""
import argparse
import json
import logging
import sys
import time

from src.algebra.lie import is_unimodular
from src.cli.schemas import (
    form_from_json, form_to_json, load_lie, read_json, valuation_from_json,
    valuation_to_json, write_json,
)
from src.cli.suite import AREAS, report_to_json, run_suite
from src.config import color_enabled, load_config, setup_logging
from src.forms.basic import BasicForm, sphere_integrate
from src.forms.bigraded import BigradedForm, as_tilde, d_total
from src.forms.convolution import convolve_forms
from src.valuations import s3
from src.valuations.valuation import convolve_valuations, mu_of, validate
from src.errors import DegreeError, InputError, SpecMismatchError, ValconvError

logger = logging.getLogger(__name__)

BANNER = "=" * 60


def _mark(ok):
    if not color_enabled():
        return "✓" if ok else "❌"
    return "\033[32m✓\033[0m" if ok else "\033[31m❌\033[0m"


def _emit(data, out):
    if out:
        write_json(data, out)
        print(f"{_mark(True)} wrote {out}")
    else:
        print(json.dumps(data, indent=2, sort_keys=True))


def _load_form(path, spec):
    return form_from_json(read_json(path), spec)


def _require_bigraded(form, path):
    if not isinstance(form, BigradedForm):
        raise InputError(f"{path}: expected a dual- or primal-valued form")
    return form


# lie


def cmd_lie_check(args):
    spec = load_lie(args.spec)
    report = is_unimodular(spec)
    print(BANNER)
    print(f"Lie algebra {spec.name} (n = {spec.n})")
    print(BANNER)
    print(f"{_mark(True)} Jacobi identity holds")
    for i, trace in enumerate(report.traces, start=1):
        print(f"  tr ad_e{i} = {trace}")
    if report.unimodular:
        print("unimodular: yes")
    else:
        print(f"unimodular: no (tr ad_e{report.witness} = {report.witness_trace})")
    return 0


# forms


def cmd_forms_convolve(args):
    spec = load_lie(args.lie)
    tau = _require_bigraded(_load_form(args.lhs, spec), args.lhs)
    zeta = _require_bigraded(_load_form(args.rhs, spec), args.rhs)
    result = convolve_forms(tau, zeta, strict=args.strict_invariance)
    print(f"{_mark(True)} degree {tau.degree} * degree {zeta.degree} -> degree {result.degree}, "
          f"sphere degrees {sorted(result.components)}")
    _emit(form_to_json(result), args.out)
    return 0


def cmd_forms_d(args):
    spec = load_lie(args.lie)
    form = _load_form(args.form, spec)
    result = form.d() if isinstance(form, BasicForm) else d_total(form)
    _emit(form_to_json(result), args.out)
    return 0


def cmd_forms_integrate(args):
    """Sphere integral of a scalar top form, or of the top tilde component of a bigraded form"""
    spec = load_lie(args.lie)
    form = _load_form(args.form, spec)
    if isinstance(form, BasicForm):
        print(f"integral: {sphere_integrate(form)}")
        return 0
    top = as_tilde(form).components.get(spec.n - 1)
    integrals = top.integrate_values() if top is not None else {}
    if not integrals:
        print("integral: 0")
    for V, value in sorted(integrals.items()):
        print(f"  e_{''.join(map(str, V)) or '()'}: {value}")
    return 0


# valuations


def _load_valuation(path, lie):
    spec = load_lie(lie) if lie else None
    return valuation_from_json(read_json(path), spec)


def cmd_val_convolve(args):
    phi = _load_valuation(args.lhs, args.lie)
    psi = _load_valuation(args.rhs, args.lie)
    result = convolve_valuations(phi, psi, strict=args.strict_invariance)
    print(f"{_mark(True)} c = {result.c}, mu = {mu_of(result)}")
    _emit(valuation_to_json(result), args.out)
    return 0


def cmd_val_validate(args):
    v = _load_valuation(args.valuation, args.lie)
    report = validate(v)
    print(BANNER)
    print(f"Validating {args.valuation} over {v.spec.name}")
    print(BANNER)
    for name, ok in report.checks.items():
        detail = report.details.get(name)
        print(f"{_mark(ok)} {name}" + (f": {detail}" if detail else ""))
    return 0 if report.passed else 1


# S^3


def _s3_table(basis):
    return s3.nu_table() if basis == "nu" else s3.mu_table()


def cmd_s3_table(args):
    alg = _s3_table(args.basis)
    if args.format == "json":
        print(json.dumps(alg.to_json(), indent=2, sort_keys=True))
    else:
        print(alg.to_markdown())
    return 0


def cmd_s3_verify(args):
    results = s3.verification_checks()
    print(BANNER)
    print("S^3 bi-invariant valuation algebra")
    print(BANNER)
    for name, ok in results:
        print(f"{_mark(ok)} {name}")
    return 0 if all(ok for _, ok in results) else 1


# suite


def cmd_suite(args):
    config = load_config()
    spec = load_lie(args.lie)
    seed = args.seed if args.seed is not None else config["suite"]["seed"]
    trials = args.trials if args.trials is not None else config["suite"]["trials"]
    max_deg = args.max_deg if args.max_deg is not None else config["suite"]["max_deg"]
    if max_deg < 0:
        raise InputError(f"--max-deg must be non-negative, got {max_deg}")
    report, counterexample_path, elapsed = run_suite(
        spec, seed, trials, max_deg, only=args.only, timings=args.timings,
        report_dir=args.report_dir)
    data = report_to_json(report)
    if args.out:
        write_json(data, args.out)
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(BANNER)
        print(f"valconv suite on {spec.name}: seed {seed}, {trials} trials, max degree {max_deg}")
        print(BANNER)
        for result in report.properties:
            if result.status == "skip":
                print(f"-  {result.area}/{result.name}: skipped ({result.detail})")
            else:
                ok = result.status == "pass"
                line = f"{_mark(ok)} {result.area}/{result.name}"
                print(line if ok else f"{line}: {result.detail}")
        print(BANNER)
        print(f"{'all properties passed' if report.passed else 'FAILED'} in {elapsed:.2f}s")
        if counterexample_path:
            print(f"counterexample written to {counterexample_path}")
    return 0 if report.passed else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="valconv", description=__doc__.strip().splitlines()[0])
    ap.add_argument("--log-level", default=None, help="Override the configured log level")
    sub = ap.add_subparsers(dest="cmd", required=True)

    lie = sub.add_parser("lie").add_subparsers(dest="lie_cmd", required=True)
    c = lie.add_parser("check", help="Jacobi and unimodularity report")
    c.add_argument("spec", help="Lie JSON path or built-in name")
    c.set_defaults(func=cmd_lie_check)

    forms = sub.add_parser("forms").add_subparsers(dest="forms_cmd", required=True)
    f = forms.add_parser("convolve")
    f.add_argument("lhs")
    f.add_argument("rhs")
    f.add_argument("--lie", required=True)
    f.add_argument("--out", default="")
    f.add_argument("--strict-invariance", action="store_true")
    f.set_defaults(func=cmd_forms_convolve)
    f = forms.add_parser("d")
    f.add_argument("form")
    f.add_argument("--lie", required=True)
    f.add_argument("--out", default="")
    f.set_defaults(func=cmd_forms_d)
    f = forms.add_parser("integrate")
    f.add_argument("form")
    f.add_argument("--lie", required=True)
    f.set_defaults(func=cmd_forms_integrate)

    val = sub.add_parser("val").add_subparsers(dest="val_cmd", required=True)
    v = val.add_parser("convolve")
    v.add_argument("lhs")
    v.add_argument("rhs")
    v.add_argument("--lie", default="", help="Override the Lie algebra named in the payloads")
    v.add_argument("--out", default="")
    v.add_argument("--strict-invariance", action="store_true")
    v.set_defaults(func=cmd_val_convolve)
    v = val.add_parser("validate")
    v.add_argument("valuation")
    v.add_argument("--lie", default="")
    v.set_defaults(func=cmd_val_validate)

    sphere = sub.add_parser("s3").add_subparsers(dest="s3_cmd", required=True)
    t = sphere.add_parser("table")
    t.add_argument("--basis", choices=("nu", "mu"), default="nu")
    t.add_argument("--format", choices=("md", "json"), default="md")
    t.set_defaults(func=cmd_s3_table)
    t = sphere.add_parser("verify")
    t.set_defaults(func=cmd_s3_verify)

    s = sub.add_parser("suite", help="Seeded property suites")
    s.add_argument("--lie", required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--max-deg", type=int, default=None)
    s.add_argument("--only", nargs="+", choices=AREAS, default=None)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--timings", action="store_true", help="Record per-property seconds")
    s.add_argument("--out", default="", help="Write the JSON report here")
    s.add_argument("--report-dir", default=None, help="Directory for counterexample files")
    s.set_defaults(func=cmd_suite)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except InputError as e:
        code = 1 if isinstance(e, (DegreeError, SpecMismatchError)) else 2
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
    except ValconvError as e:
        code = 1
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
    logger.debug("%s finished in %.2fs with exit code %d", args.cmd,
                  time.perf_counter() - started, code)
    return code
