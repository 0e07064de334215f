"""Command-line front end. Every subcommand prints one JSON document.

Exit codes: 0 success, 1 usage or input error, 2 an internal check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import clifford, filtration, heegner, kugasatake, lattice, qseries, weilrep
from .scalar import QQ, GF, CycNum, FpElement


class UsageError(Exception):
    """Bad flags or bad input files; maps to exit code 1."""

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, usage=self.format_usage().strip())


def jsonable(obj):
    """Lossless JSON view: rationals become "p/q" strings, tuples become lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, FpElement):
        return str(obj)
    if isinstance(obj, CycNum):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), separators=(",", ":"), ensure_ascii=False)


def _table(obj, prefix="") -> list[str]:
    obj = jsonable(obj)
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            lines += _table(v, f"{prefix}{k}.")
        return lines
    if isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        lines = []
        for i, v in enumerate(obj):
            lines += _table(v, f"{prefix}{i}.")
        return lines
    return [f"{prefix.rstrip('.')}\t{json.dumps(obj, separators=(',', ':'))}"]


# ---------------------------------------------------------------- input parsing

def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", path=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc.msg}", path=path,
                         line=exc.lineno, column=exc.colno, position=exc.pos) from None


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_vector(text: str) -> list[Fraction]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise UsageError(f"empty vector {text!r}")
    return [parse_rational(p) for p in parts]


def parse_functional(text: str) -> tuple[Fraction, int]:
    """"exp:gamma", e.g. "1/4:1"."""
    try:
        n, g = text.split(":")
        return parse_rational(n), int(g)
    except ValueError:
        raise UsageError(f"functional must look like EXP:GAMMA, got {text!r}") from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def load_lattice(path: str | None, default: lattice.Lattice) -> lattice.Lattice:
    if path is None:
        return default
    obj = read_json(path)
    try:
        return lattice.Lattice.from_json(obj)
    except (lattice.LatticeError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid lattice in {path}: {exc}", path=path) from None


def load_forms(path: str) -> list[qseries.VVQExpansion]:
    obj = read_json(path)
    items = obj if isinstance(obj, list) else [obj]
    out = []
    for i, item in enumerate(items):
        try:
            out.append(qseries.VVQExpansion.from_json(item))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"invalid series #{i} in {path}: {exc}", path=path, index=i) from None
    return out


def _field(args):
    if args.field == "Q":
        return QQ
    if args.p is None:
        raise UsageError("--field Fp requires --p")
    try:
        return GF(args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- subcommands

def cmd_lattice_info(args):
    if args.lattice:
        lat = load_lattice(args.lattice, None)
        expected = None
    else:
        lat = lattice.l2d(args.d)
        expected = {"rank": 21, "signature": [19, 2], "cyclic_orders": [2 * args.d]}
    pos, neg = lattice.signature(lat)
    form = lattice.discriminant_form(lat, args.convention)
    report = {
        "rank": lat.rank,
        "signature": [pos, neg],
        "determinant": lat.determinant(),
        "discriminant": form.to_json(),
    }
    ok = True
    if expected is not None:
        report["d"] = args.d
        ok = (report["rank"] == expected["rank"] and report["signature"] == expected["signature"]
              and list(form.cyclic_orders) == expected["cyclic_orders"])
        report["checks_pass"] = ok
    return report, ok


def cmd_theta(args):
    return qseries.siegel_theta(args.d, args.nmax).to_json(), True


def cmd_eisenstein(args):
    return qseries.eisenstein_e10(args.nmax).to_json(), True


def cmd_borcherds_scan(args):
    d = args.d
    floor = Fraction(d, 4) + 1
    if args.nmax <= floor:
        raise UsageError(f"--nmax must exceed d/4 + 1 = {floor}")
    series = heegner.e10_theta(d, args.nmax)
    support_ok, violations = qseries.vmod_support_check(series)
    rows = []
    for g in range(2 * d):
        rows += [r for r in heegner.effective_scan(d, g, args.nmax, series) if r["n"] > floor]
    rows.sort(key=lambda r: (r["n"], r["gamma"]))
    failures = [r for r in rows if not r["pass"]]
    ok = support_ok and not failures
    return {
        "d": d,
        "nmax": args.nmax,
        "cells": len(rows),
        "support_ok": support_ok,
        "support_violations": violations,
        "failures": failures,
        "rows": rows,
        "all_pass": ok,
    }, ok


def cmd_heegner_invariants(args):
    try:
        lat = heegner.Rank2Lattice(args.d, args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return heegner.rank2_invariants(lat).to_json(), True


def cmd_heegner_span_test(args):
    if args.forms:
        forms = load_forms(args.forms)
    elif args.d and args.nmax is not None:
        forms = [heegner.e10_theta(args.d, args.nmax)]
    else:
        raise UsageError("give --forms FILE or both --d and --nmax")
    d = forms[0].d
    targets = [parse_functional(t) for t in args.targets or []]
    for k in range(1, (args.elliptic or 0) + 1):
        inv = heegner.rank2_invariants(heegner.elliptic_family(d, k))
        targets.append(heegner.functional_for(inv))
    query = parse_functional(args.query)
    try:
        coeffs = heegner.span_test(forms, targets, query)
    except qseries.PrecisionError as exc:
        raise UsageError(str(exc)) from None
    solvable = coeffs is not None
    return {
        "d": d,
        "targets": [[str(n), g] for n, g in targets],
        "query": [str(query[0]), query[1]],
        "solvable": solvable,
        "coefficients": coeffs,
    }, solvable or not args.expect_solvable


def cmd_weilrep_check(args):
    report = weilrep.check_relations(args.d, args.n, args.gauss_sign)
    return report, report["all_pass"]


def cmd_ks_verify(args):
    U = lattice.make_standard("U")
    base = load_lattice(args.lattice, lattice.direct_sum(U, U))
    r = base.rank
    defaults = {"x": "1,-1,0,0", "y": "0,0,1,-1", "v1": "1,-1,0,0", "v2": "0,0,1,-1"}
    vecs = {}
    for name in ("x", "y", "v1", "v2"):
        text = getattr(args, name) or (defaults[name] if r == 4 and not args.lattice else None)
        if text is None:
            raise UsageError(f"--{name} is required with --lattice")
        v = parse_vector(text)
        if len(v) != r:
            raise UsageError(f"--{name} has length {len(v)}, lattice rank is {r}")
        vecs[name] = v
    try:
        p = kugasatake.make_period(base, vecs["x"], vecs["y"])
        report = kugasatake.polarization_report(p, vecs["v1"], vecs["v2"])
    except (kugasatake.PeriodError, clifford.CliffordError, lattice.LatticeError) as exc:
        raise UsageError(str(exc)) from None
    report["c"] = p.c
    if args.d:
        a, b, primes = kugasatake.ks_degree_exponents(args.d)
        report["degree_exponents"] = {"a": a, "b": b, "primes": primes}
    ok = all(report[k] for k in ("J_squared_is_minus_identity", "antisymmetric", "nondegenerate",
                                 "J_invariant", "symmetric")) and report["definite_sign"] is not None
    report["all_pass"] = ok
    return report, ok


def cmd_filtration_check(args):
    F = _field(args)
    U = lattice.make_standard("U")
    base = load_lattice(args.lattice, lattice.direct_sum(U, U))
    omega = parse_vector(args.omega) if args.omega else [1] + [0] * (base.rank - 1)
    try:
        s = filtration.make_space(base.gram, _coerce(omega, F), F)
        report = {"filtration": filtration.filtration_report(s)}
        checks = [report["filtration"][k] for k in (
            "graded_degrees_ok", "fil2_zero", "fil_minus1_is_everything", "gr1_equals_gr_minus1",
            "fil1_is_omega_times_f0_products", "fil1_inside_omega_kernel",
            "omega_kernel_equals_omega_cl_even")]
        checks.append(report["filtration"]["omega_kernel_dim"] == 2 ** (s.rank - 2))
        if args.v:
            psp = filtration.psp_map_check(s, _coerce(parse_vector(args.v), F))
            report["psp"] = psp
            checks += [psp["kernel_equals_image"], psp["equal_to_fil1"],
                       psp["kernel_dim"] == psp["expected_dim"]]
        if args.eta1 or args.eta2:
            if not (args.eta1 and args.eta2):
                raise UsageError("--eta1 and --eta2 go together")
            demo = filtration.ks_divisibility_demo(
                s, _coerce(parse_vector(args.eta1), F), _coerce(parse_vector(args.eta2), F))
            report["divisibility"] = demo
            checks += list(demo.values())
    except (filtration.FiltrationError, clifford.CliffordError) as exc:
        raise UsageError(str(exc)) from None
    ok = all(checks)
    report["all_pass"] = ok
    return report, ok


def _coerce(vec, F):
    out = []
    for x in vec:
        if F is not QQ and Fraction(x).denominator != 1:
            out.append(F(Fraction(x).numerator) / F(Fraction(x).denominator))
        else:
            out.append(F(int(x)) if F is not QQ else Fraction(x))
    return out


def cmd_clifford_selftest(args):
    report = clifford.selftest(trials=args.trials, seed=args.seed)
    return report, report["all_pass"]


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="k3arith", description="Exact computations around K3 lattices, "
                "vector-valued modular forms and Clifford algebras.")
    p.add_argument("--output", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    lat = sub.add_parser("lattice").add_subparsers(dest="action", parser_class=_Parser, required=True)
    info = lat.add_parser("info", help="rank, signature and discriminant form")
    info.add_argument("--d", type=positive_int, default=1)
    info.add_argument("--lattice", help="JSON file {\"gram\": [[...]]} instead of L_2d")
    info.add_argument("--convention", choices=["psi", "borcherds"], default="psi")
    info.set_defaults(func=cmd_lattice_info)

    th = sub.add_parser("theta", help="Siegel theta series theta_2d")
    th.add_argument("--d", type=positive_int, required=True)
    th.add_argument("--nmax", type=rational_arg, required=True)
    th.set_defaults(func=cmd_theta)

    es = sub.add_parser("eisenstein", help="E_10 q-expansion")
    es.add_argument("--nmax", type=int, required=True)
    es.set_defaults(func=cmd_eisenstein)

    bs = sub.add_parser("borcherds-scan", help="effective nonvanishing scan of E_10 theta_2d")
    bs.add_argument("--d", type=positive_int, required=True)
    bs.add_argument("--nmax", type=rational_arg, required=True)
    bs.set_defaults(func=cmd_borcherds_scan)

    hg = sub.add_parser("heegner").add_subparsers(dest="action", parser_class=_Parser, required=True)
    hi = hg.add_parser("invariants", help="(n, gamma) of [[2d, a], [a, 2b]]")
    hi.add_argument("--d", type=positive_int, required=True)
    hi.add_argument("--a", type=int, required=True)
    hi.add_argument("--b", type=int, required=True)
    hi.set_defaults(func=cmd_heegner_invariants)
    hs = hg.add_parser("span-test", help="solve e_query = sum c_i e_target_i on given forms")
    hs.add_argument("--forms", help="JSON file: one series or a list of series")
    hs.add_argument("--d", type=positive_int, help="use E_10 theta_2d instead of --forms")
    hs.add_argument("--nmax", type=rational_arg)
    hs.add_argument("--targets", nargs="*", metavar="EXP:GAMMA")
    hs.add_argument("--elliptic", type=int, metavar="K",
                    help="append elliptic-family functionals k = 1..K")
    hs.add_argument("--query", required=True, metavar="EXP:GAMMA")
    hs.add_argument("--expect-solvable", action="store_true",
                    help="exit 2 when the query is not in the span")
    hs.set_defaults(func=cmd_heegner_span_test)

    wr = sub.add_parser("weilrep").add_subparsers(dest="action", parser_class=_Parser, required=True)
    wc = wr.add_parser("check", help="exact Mp_2(Z) relations for rho_L2d")
    wc.add_argument("--d", type=positive_int, required=True)
    wc.add_argument("--n", type=int, default=19)
    wc.add_argument("--gauss-sign", type=int, choices=[1, -1], default=1)
    wc.set_defaults(func=cmd_weilrep_check)

    ks = sub.add_parser("kuga-satake").add_subparsers(dest="action", parser_class=_Parser, required=True)
    kv = ks.add_parser("verify", help="complex structure and polarization on Cl_+")
    kv.add_argument("--lattice")
    for name in ("x", "y", "v1", "v2"):
        kv.add_argument(f"--{name}", metavar="a,b,...")
    kv.add_argument("--d", type=positive_int, help="also report the degree exponents for d")
    kv.set_defaults(func=cmd_ks_verify)

    fl = sub.add_parser("filtration").add_subparsers(dest="action", parser_class=_Parser, required=True)
    fc = fl.add_parser("check", help="induced filtration, psp map and divisibility demo")
    fc.add_argument("--field", choices=["Q", "Fp"], default="Q")
    fc.add_argument("--p", type=int)
    fc.add_argument("--lattice")
    fc.add_argument("--omega", metavar="a,b,...")
    fc.add_argument("--v", metavar="a,b,...", help="anisotropic vector for the psp map")
    fc.add_argument("--eta1", metavar="a,b,...")
    fc.add_argument("--eta2", metavar="a,b,...")
    fc.set_defaults(func=cmd_filtration_check)

    cl = sub.add_parser("clifford").add_subparsers(dest="action", parser_class=_Parser, required=True)
    cs = cl.add_parser("selftest", help="randomized algebra-law checks")
    cs.add_argument("--trials", type=positive_int, default=100)
    cs.add_argument("--seed", type=int, default=0)
    cs.set_defaults(func=cmd_clifford_selftest)
    for leaf in (info, th, es, bs, hi, hs, wc, kv, fc, cs):
        leaf.add_argument("--output", choices=["json", "table"], default=argparse.SUPPRESS)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        report, ok = args.func(args)
    except UsageError as exc:
        stdout.write(dumps({"error": str(exc), **exc.detail}) + "\n")
        stderr.write(f"error: {exc}\n")
        return 1
    if args.output == "table":
        stdout.write("\n".join(_table(report)) + "\n")
    else:
        stdout.write(dumps(report) + "\n")
    if not ok:
        stderr.write("check failed\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
