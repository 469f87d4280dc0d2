"""Command-line front end: evaluate, transform, verify, tabulate.

Exit codes: 0 success, 1 verification failure, 2 usage/configuration error.
Outputs are deterministic — the same arguments (and seed) produce
byte-identical files.  Floats are written with Python's shortest
round-trip representation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import quadrature as quad
from .ball import ball_basis_eval
from .classical import continuous_hahn, gegenbauer, jacobi
from .dfamily import DParams, d_family_eval
from .errors import DomainError
from .tanh_family import FamilyParams, family_eval, fourier_closed_form, theta_factor
from .verify import SUITE_NAMES, report_to_dict, reports_to_json, run_suite

USAGE_ERROR = 2
VERIFY_FAILURE = 1


def _parse_multi_index(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad multi-index {text!r}") from exc


def _parse_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}") from exc


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _json_value_record(inputs: dict, value) -> str:
    value = complex(value)
    record = {"inputs": inputs, "value_re": value.real, "value_im": value.imag}
    return json.dumps(record, sort_keys=True)


def _require(parser: argparse.ArgumentParser, args, names) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            parser.error(f"--{name.replace('_', '-')} is required for this function")


def _check_r(parser, args, length: int) -> None:
    if args.r is not None and args.r != length:
        parser.error(f"--r={args.r} contradicts a length-{length} vector argument")


def _eval_value(parser, args):
    fn = args.fn
    if fn == "gegenbauer":
        _require(parser, args, ("n", "lam", "x"))
        return {"fn": fn, "n": args.n[0], "lambda": args.lam, "x": args.x[0]}, \
            gegenbauer(args.n[0], args.lam, args.x[0])
    if fn == "jacobi":
        _require(parser, args, ("n", "alpha", "beta", "x"))
        return {"fn": fn, "n": args.n[0], "alpha": args.alpha, "beta": args.beta,
                "x": args.x[0]}, jacobi(args.n[0], args.alpha, args.beta, args.x[0])
    if fn == "hahn":
        _require(parser, args, ("n", "x", "a", "b", "c", "d"))
        return {"fn": fn, "n": args.n[0], "x": args.x[0],
                "a": args.a, "b": args.b, "c": args.c, "d": args.d}, \
            continuous_hahn(args.n[0], args.x[0], (args.a, args.b, args.c, args.d))
    if fn == "ball":
        _require(parser, args, ("n", "mu", "x"))
        _check_r(parser, args, len(args.n))
        if len(args.x) != len(args.n):
            parser.error("--x must have as many coordinates as --n")
        return {"fn": fn, "n": list(args.n), "mu": args.mu, "x": list(args.x)}, \
            ball_basis_eval(args.n, args.mu, np.array(args.x))
    if fn == "f_r":
        _require(parser, args, ("n", "a", "mu", "x"))
        _check_r(parser, args, len(args.n))
        if len(args.x) != len(args.n):
            parser.error("--x must have as many coordinates as --n")
        params = FamilyParams(args.a, args.mu, args.n)
        return {"fn": fn, "n": list(args.n), "a": args.a, "mu": args.mu,
                "x": list(args.x)}, family_eval(np.array(args.x), params)
    if fn == "d_family":
        _require(parser, args, ("n", "a1", "a2", "x"))
        _check_r(parser, args, len(args.n))
        if len(args.x) != len(args.n):
            parser.error("--x must have as many coordinates as --n")
        params = DParams(args.a1, args.a2, args.n)
        return {"fn": fn, "n": list(args.n), "a1": args.a1, "a2": args.a2,
                "x": list(args.x)}, d_family_eval(np.array(args.x, dtype=complex), params)
    parser.error(f"unknown function {fn!r}")


def _cmd_eval(parser, args) -> int:
    try:
        inputs, value = _eval_value(parser, args)
    except (ValueError, DomainError) as exc:
        parser.error(str(exc))
    _write_output(_json_value_record(inputs, value), args.output)
    return 0


def _cmd_fourier(parser, args) -> int:
    if len(args.xi) != len(args.n):
        parser.error("--xi must have as many components as --n")
    _check_r(parser, args, len(args.n))
    try:
        params = FamilyParams(args.a, args.mu, args.n)
        closed = fourier_closed_form(params, np.array(args.xi))
    except (ValueError, OverflowError) as exc:
        parser.error(str(exc))
    record = {
        "inputs": {"n": list(args.n), "a": args.a, "mu": args.mu, "xi": list(args.xi)},
        "closed_re": closed.real,
        "closed_im": closed.imag,
    }
    status = 0
    if args.check:
        oracle = complex(quad.fourier_numeric(params, np.array(args.xi)))
        scale = max(abs(closed), abs(oracle))
        rel = float(abs(closed - oracle) / scale) if scale > 0 else 0.0
        tolerance = args.tolerance if args.tolerance is not None else 1e-6
        passed = bool(rel <= tolerance or abs(closed - oracle) <= 1e-9)
        record.update({"oracle_re": oracle.real, "oracle_im": oracle.imag,
                       "rel_error": rel, "tolerance": tolerance, "passed": passed})
        if not passed:
            status = VERIFY_FAILURE
    _write_output(json.dumps(record, sort_keys=True), args.output)
    return status


def _reports_to_csv(reports) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["identity_name", "parameters", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
              "abs_error", "rel_error", "tolerance", "passed", "low_confidence"]
    writer.writerow(header)
    for report in reports:
        data = report_to_dict(report)
        row = [data["identity_name"], json.dumps(data["parameters"], sort_keys=True)]
        row += [repr(data[key]) for key in header[2:9]]
        row += [str(data["passed"]).lower(), str(data["low_confidence"]).lower()]
        writer.writerow(row)
    return buffer.getvalue()


def _cmd_verify(parser, args) -> int:
    try:
        reports = run_suite(args.suite, seed=args.seed, r_max=args.r_max,
                            tolerance=args.tolerance, quick=args.quick)
    except ValueError as exc:
        parser.error(str(exc))
    if args.format == "json":
        text = reports_to_json(reports) + "\n"
    else:
        text = _reports_to_csv(reports)
    _write_output(text, args.output)
    failed = sum(1 for report in reports if not report.passed)
    summary = f"{len(reports) - failed}/{len(reports)} checks passed"
    if args.output is not None:
        sys.stdout.write(summary + "\n")
    return 0 if failed == 0 else VERIFY_FAILURE


def _float_repr(value: float) -> str:
    return repr(float(value))


def _cmd_table(parser, args) -> int:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    fn = args.fn
    if fn == "theta":
        _require(parser, args, ("n", "a", "mu", "start", "stop", "step"))
        params = FamilyParams(args.a, args.mu, args.n)
        r = len(args.n)
        j = args.axis if args.axis is not None else 1
        if not 1 <= j <= r:
            parser.error("--axis out of range")
        writer.writerow(["xi", "value_re", "value_im"])
        for xi in _grid(args.start, args.stop, args.step):
            value = complex(theta_factor(j, r, params, xi))
            writer.writerow([_float_repr(xi), _float_repr(value.real),
                             _float_repr(value.imag)])
    elif fn == "ball":
        _require(parser, args, ("n", "mu", "grid"))
        if len(args.n) != 2:
            parser.error("--fn ball tables are 2-dimensional; give --n with two entries")
        writer.writerow(["x1", "x2", "value_re", "value_im"])
        axis = np.linspace(-1.0, 1.0, args.grid)
        for x1 in axis:
            for x2 in axis:
                if x1 * x1 + x2 * x2 > 1.0:
                    continue
                value = complex(ball_basis_eval(args.n, args.mu, np.array([x1, x2])))
                writer.writerow([_float_repr(x1), _float_repr(x2),
                                 _float_repr(value.real), _float_repr(value.imag)])
    elif fn == "gegenbauer":
        _require(parser, args, ("n", "lam", "start", "stop", "step"))
        writer.writerow(["x", "value_re", "value_im"])
        for x in _grid(args.start, args.stop, args.step):
            value = complex(gegenbauer(args.n[0], args.lam, x))
            writer.writerow([_float_repr(x), _float_repr(value.real),
                             _float_repr(value.imag)])
    elif fn == "d_family":
        _require(parser, args, ("n", "a1", "a2", "start", "stop", "step"))
        if len(args.n) != 1:
            parser.error("--fn d_family tables are 1-dimensional; give a single --n entry")
        params = DParams(args.a1, args.a2, args.n)
        writer.writerow(["x", "value_re", "value_im"])
        for x in _grid(args.start, args.stop, args.step):
            value = complex(d_family_eval(np.array([x], dtype=complex), params))
            writer.writerow([_float_repr(x), _float_repr(value.real),
                             _float_repr(value.imag)])
    else:
        parser.error(f"unknown table function {fn!r}")
    _write_output(buffer.getvalue(), args.output)
    return 0


def _grid(start: float, stop: float, step: float):
    if step <= 0:
        raise ValueError("--step must be positive")
    count = int(round((stop - start) / step))
    return [start + k * step for k in range(count + 1)
            if start + k * step <= stop + 1e-12]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballfourier",
        description="Evaluate ball orthogonal polynomials, their closed-form "
                    "Fourier transforms, and run quadrature verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", default=None, help="write output to this path")
        p.add_argument("--r", type=int, default=None,
                       help="dimension; cross-checked against vector arguments")

    p_eval = sub.add_parser("eval", help="evaluate one function at one point")
    add_common(p_eval)
    p_eval.add_argument("--fn", required=True,
                        choices=("gegenbauer", "jacobi", "hahn", "ball", "f_r", "d_family"))
    p_eval.add_argument("--n", type=_parse_multi_index, help="degree or multi-index (comma separated)")
    p_eval.add_argument("--lambda", dest="lam", type=float, help="Gegenbauer parameter")
    p_eval.add_argument("--alpha", type=float)
    p_eval.add_argument("--beta", type=float)
    p_eval.add_argument("--a", type=float)
    p_eval.add_argument("--b", type=float)
    p_eval.add_argument("--c", type=float)
    p_eval.add_argument("--d", type=float)
    p_eval.add_argument("--mu", type=float)
    p_eval.add_argument("--a1", type=float)
    p_eval.add_argument("--a2", type=float)
    p_eval.add_argument("--x", type=_parse_vector, help="evaluation point (comma separated)")
    p_eval.set_defaults(func=_cmd_eval)

    p_fourier = sub.add_parser("fourier", help="closed-form transform, optionally checked")
    add_common(p_fourier)
    p_fourier.add_argument("--n", type=_parse_multi_index, required=True)
    p_fourier.add_argument("--a", type=float, required=True)
    p_fourier.add_argument("--mu", type=float, required=True)
    p_fourier.add_argument("--xi", type=_parse_vector, required=True)
    p_fourier.add_argument("--check", action="store_true",
                           help="compare against the quadrature oracle")
    p_fourier.add_argument("--tolerance", type=float, default=None)
    p_fourier.set_defaults(func=_cmd_fourier)

    p_verify = sub.add_parser("verify", help="run an identity-verification suite")
    add_common(p_verify)
    p_verify.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--r-max", dest="r_max", type=int, default=3)
    p_verify.add_argument("--tolerance", type=float, default=None)
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.add_argument("--quick", action="store_true",
                          help="smaller grids for smoke runs")
    p_verify.set_defaults(func=_cmd_verify)

    p_table = sub.add_parser("table", help="CSV table of values over a grid")
    add_common(p_table)
    p_table.add_argument("--fn", required=True,
                         choices=("theta", "ball", "gegenbauer", "d_family"))
    p_table.add_argument("--n", type=_parse_multi_index)
    p_table.add_argument("--lambda", dest="lam", type=float)
    p_table.add_argument("--a", type=float)
    p_table.add_argument("--mu", type=float)
    p_table.add_argument("--a1", type=float)
    p_table.add_argument("--a2", type=float)
    p_table.add_argument("--axis", type=int, default=None,
                         help="theta axis index j (default 1)")
    p_table.add_argument("--start", type=float)
    p_table.add_argument("--stop", type=float)
    p_table.add_argument("--step", type=float)
    p_table.add_argument("--grid", type=int, help="grid points per axis (ball tables)")
    p_table.set_defaults(func=_cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except (ValueError, DomainError, OverflowError) as exc:
        parser.exit(USAGE_ERROR, f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
