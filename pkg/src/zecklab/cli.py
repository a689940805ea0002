"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import distribution, far_difference, spectral, zeckendorf
from .exceptions import BudgetExceeded, VerificationError
from .plrs import DEFAULT_BUDGET, build_sequence, load_spec, summand_histogram

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _exact(q: Fraction) -> str:
    return str(q)


def _stat(q: Fraction) -> dict:
    return {"exact": _exact(q), "float": float(q)}


def _emit(out, payload, fmt: str = "json", rows=None, header=None):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(json.dumps(payload, indent=2) + "\n")


def _spec_arg(p):
    p.add_argument("--spec", required=True, help="preset name, inline JSON or path to a JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zecklab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("decompose", help="legal decomposition of an integer")
    _spec_arg(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("dist", help="exact summand-count distribution at one level")
    _spec_arg(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("moments", help="exact moments of the summand count")
    _spec_arg(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--order", type=int, default=4)

    p = sub.add_parser("gaussian", help="Gaussian-convergence diagnostics")
    _spec_arg(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--max-even-order", type=int, default=6)

    p = sub.add_parser("roots", help="roots of A(y) at a given x")
    _spec_arg(p)
    p.add_argument("--x", default="1")

    p = sub.add_parser("lek", help="fit mean ~ C n + d")
    _spec_arg(p)
    p.add_argument("--from", dest="n_lo", type=int, required=True)
    p.add_argument("--to", dest="n_hi", type=int, required=True)

    p = sub.add_parser("fardiff", help="far-difference representations")
    fsub = p.add_subparsers(dest="fcommand", parser_class=_Parser)
    q = fsub.add_parser("decompose")
    q.add_argument("--n", type=int, required=True)
    q = fsub.add_parser("stats")
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", help="run oracle checks up to a level")
    _spec_arg(p)
    p.add_argument("--max-level", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def _positive(value: int, name: str):
    if value < 1:
        raise UsageError(f"{name} must be a positive integer")


def cmd_decompose(args, out):
    spec = load_spec(args.spec)
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    count = 1
    seq = build_sequence(spec, count)
    while seq.next_term() <= args.n:
        count *= 2
        seq = build_sequence(spec, count)
    d = zeckendorf.decompose(seq, args.n)
    _emit(out, {"value": str(d.value), "level": d.level, "coeffs": list(d.coeffs), "summands": d.summands})


def cmd_dist(args, out):
    _positive(args.level, "--level")
    table = distribution.build_table(load_spec(args.spec), args.level)
    rows = [(k, str(v)) for k, v in table.counts.items()]
    payload = {
        "level": table.level,
        "delta": str(table.delta),
        "counts": [{"k": k, "count": v} for k, v in rows],
    }
    _emit(out, payload, args.format, rows, ("k", "count"))


def cmd_moments(args, out):
    _positive(args.level, "--level")
    if args.order < 2:
        raise UsageError("--order must be at least 2")
    stats = distribution.moments(distribution.build_table(load_spec(args.spec), args.level), args.order)
    _emit(out, {
        "level": args.level,
        "mean": _stat(stats.mean),
        "variance": _stat(stats.variance),
        "raw_moments": {str(r): _exact(m) for r, m in enumerate(stats.raw_moments)},
        "centered_moments": {str(r): _exact(m) for r, m in stats.centered_moments.items()},
        "standardized_moments": {str(r): m for r, m in stats.standardized_moments.items()},
    })


def cmd_gaussian(args, out):
    _positive(args.level, "--level")
    table = distribution.build_table(load_spec(args.spec), args.level)
    m = distribution.gaussian_metrics(table, args.max_even_order)
    _emit(out, {
        "level": args.level,
        "skewness": m.skewness,
        "excess_kurtosis": m.excess_kurtosis,
        "standardized_even_moments": {
            str(r): {"observed": v, "target": t} for r, (v, t) in m.standardized_even_moments.items()
        },
        "ks_distance": m.ks_distance,
    })


def cmd_roots(args, out):
    try:
        x = Fraction(args.x)
    except ValueError:
        raise UsageError(f"--x must be a number, got {args.x!r}")
    report = spectral.spec_roots(load_spec(args.spec), x)
    _emit(out, {
        "x_value": report.x_value,
        "poly_coeffs": [_exact(c) for c in report.poly_coeffs],
        "roots": [[r.real, r.imag] for r in report.roots],
        "dominant": report.dominant,
        "min_pairwise_gap": report.min_pairwise_gap,
        "has_multiple_root": report.has_multiple_root,
        "residuals": list(report.residuals),
    })


def cmd_lek(args, out):
    fit = spectral.lekkerkerker_fit(load_spec(args.spec), args.n_lo, args.n_hi)
    _emit(out, {
        "C": _stat(fit.C_exact),
        "d": _stat(fit.d_exact),
        "residuals": fit.residual_tail,
    })


def cmd_fardiff(args, out):
    if args.fcommand == "decompose":
        sd = far_difference.fd_decompose(args.n)
        _emit(out, [[i, s] for i, s in sd.terms])
        return
    if args.fcommand != "stats":
        raise UsageError("fardiff needs a subcommand: decompose or stats")
    _positive(args.level, "--level")
    st = far_difference.fd_stats(far_difference.fd_table(args.level))
    exact = {"EK": st.EK, "EL": st.EL, "VarK": st.VarK, "VarL": st.VarL}
    floats = {"corr_KL": st.corr_KL, "corr_sum_diff": st.corr_sum_diff}
    payload = {"level": st.level, **{k: _stat(v) for k, v in exact.items()}, **floats}
    rows = [(k, float(v), _exact(v)) for k, v in exact.items()]
    rows += [(k, v, "") for k, v in floats.items()]
    _emit(out, payload, args.format, rows, ("statistic", "value", "exact"))


def cmd_verify(args, out):
    spec = load_spec(args.spec)
    _positive(args.max_level, "--max-level")
    report = {"spec": list(spec.coeffs), "bijection": {}, "table": {}, "series": {}, "skipped": []}
    failed = False
    tables = distribution.build_tables(spec, args.max_level, args.budget)
    series = distribution.gf_series(spec, args.max_level, args.budget)
    for n in range(1, args.max_level + 1):
        try:
            bij = zeckendorf.verify_bijection(spec, n, args.budget)
        except BudgetExceeded:
            report["skipped"].append(n)
            continue
        report["bijection"][str(n)] = {"checked": bij.checked, "failures": len(bij.failures)}
        table_ok = tables[n - 1].counts == summand_histogram(spec, n, args.budget)
        report["table"][str(n)] = table_ok
        failed |= not bij.ok or not table_ok
    for n in range(1, args.max_level + 1):
        ok = series[n] == tables[n - 1].counts
        report["series"][str(n)] = ok
        failed |= not ok
    report["ok"] = not failed
    _emit(out, report)
    if failed:
        raise VerificationError("verification failed")


COMMANDS = {
    "decompose": cmd_decompose,
    "dist": cmd_dist,
    "moments": cmd_moments,
    "gaussian": cmd_gaussian,
    "roots": cmd_roots,
    "lek": cmd_lek,
    "fardiff": cmd_fardiff,
    "verify": cmd_verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except VerificationError as exc:
        err.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY
    except (ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
