"""Command-line front end.

Exit codes: 0 ok, 2 usage error, 3 domain error, 4 I/O error,
5 Monte Carlo verification failed (some ``|z| > 3``).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

from .ar1 import Target, maximize, moments_ar1, sweep
from .corrmat import ar1_matrix, read_matrix_file
from .errors import GaussMaxError, InvalidArgument
from .moments import MAX_ELL_MEAN, Method, MomentResult, second_moment_max, variance_max
from .oracle import MIN_SAMPLES, sample_max_moments

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO, EXIT_VERIFY = 0, 2, 3, 4, 5
Z_LIMIT = 3.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(value) -> str:
    """Serialize one field: 17 significant digits for reals, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _json_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, (bool, int, float)):
        return fmt(value)
    return '"' + str(value).replace("\\", "\\\\").replace('"', '\\"') + '"'


def render(records: list[dict], fmt_name: str, drop_none: bool = True) -> str:
    """Render flat records as CSV (header always present) or JSON."""
    if fmt_name == "json":
        objs = []
        for rec in records:
            items = [(k, v) for k, v in rec.items() if not (drop_none and v is None)]
            objs.append("{" + ", ".join(f'"{k}": {_json_value(v)}' for k, v in items) + "}")
        body = objs[0] if len(objs) == 1 else "[" + ", ".join(objs) + "]"
        return body + "\n"
    header = list(records[0].keys()) if records else []
    lines = [",".join(header)]
    lines += [",".join(fmt(rec[k]) for k in header) for rec in records]
    return "\n".join(lines) + "\n"


def _moment_record(res: MomentResult) -> dict:
    return {
        "ell": res.ell,
        "method": Method(res.method).value,
        "mean": res.mean,
        "second_moment": res.second_moment,
        "variance": res.variance,
    }


def _moments_for_matrix(R) -> MomentResult:
    if R.dim <= MAX_ELL_MEAN:
        return variance_max(R)
    return MomentResult(R.dim, None, second_moment_max(R), None)


def cmd_moments(args, out) -> int:
    if (args.rho is None) == (args.matrix is None):
        raise UsageError("give exactly one of --rho or --matrix")
    if args.matrix is not None:
        try:
            R = read_matrix_file(args.matrix)
        except OSError as exc:
            print(f"error: cannot read {args.matrix}: {exc.strerror}", file=sys.stderr)
            return EXIT_IO
        except InvalidArgument as exc:
            raise UsageError(f"bad matrix file {args.matrix}: {exc}") from None
        if args.ell is not None and args.ell != R.dim:
            raise UsageError(f"--ell {args.ell} does not match the {R.dim}x{R.dim} matrix")
        res = _moments_for_matrix(R)
    else:
        if args.ell is None:
            raise UsageError("--ell is required with --rho")
        res = moments_ar1(args.rho, args.ell)
    out.write(render([_moment_record(res)], args.format))
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    rows = sweep(args.ell, args.min, args.max, args.step)
    text = render([asdict(r) for r in rows], "csv")
    if args.out is None or args.out == "-":
        out.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_maximize(args, out) -> int:
    res = maximize(args.ell, Target.parse(args.target))
    rec = {
        "ell": res.ell,
        "target": res.target.value,
        "rho_star": res.rho_star,
        "value": res.value,
        "evaluations": res.evaluations,
    }
    out.write(render([rec], args.format))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.samples < MIN_SAMPLES:
        raise UsageError(f"--samples must be at least {MIN_SAMPLES}")
    exact = moments_ar1(args.rho, args.ell)
    est = sample_max_moments(ar1_matrix(args.rho, args.ell), args.samples, args.seed, workers=args.workers)
    z = est.z_scores(exact.mean, exact.second_moment, exact.variance)
    records = []
    for name, analytic, mc, se in (
        ("mean", exact.mean, est.mean, est.se_mean),
        ("second_moment", exact.second_moment, est.second_moment, est.se_second),
        ("variance", exact.variance, est.variance, est.se_variance),
    ):
        if analytic is None:
            continue
        records.append(
            {
                "quantity": name,
                "analytic": analytic,
                "monte_carlo": mc,
                "se": se,
                "z": float(z[name]),
                "samples": est.samples,
                "seed": est.seed,
            }
        )
    out.write(render(records, args.format))
    ok = all(abs(r["z"]) <= Z_LIMIT for r in records)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gaussmax", description="Moments of the maximum of a small Gaussian vector.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("moments", help="mean, second moment and variance of the maximum")
    m.add_argument("--ell", type=int)
    m.add_argument("--rho", type=float)
    m.add_argument("--matrix", metavar="FILE")
    m.add_argument("--format", choices=("csv", "json"), default="csv")
    m.set_defaults(func=cmd_moments)

    s = sub.add_parser("sweep", help="AR(1) moments on a grid of rho, as CSV")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--min", type=float, default=-0.99)
    s.add_argument("--max", type=float, default=0.99)
    s.add_argument("--step", type=float, default=0.01)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(func=cmd_sweep)

    x = sub.add_parser("maximize", help="lag-one correlation maximizing a moment")
    x.add_argument("--ell", type=int, required=True)
    x.add_argument("--target", choices=("mean", "second", "second_moment"), default="mean")
    x.add_argument("--format", choices=("csv", "json"), default="csv")
    x.set_defaults(func=cmd_maximize)

    v = sub.add_parser("verify", help="compare analytic AR(1) moments with Monte Carlo")
    v.add_argument("--ell", type=int, required=True)
    v.add_argument("--rho", type=float, required=True)
    v.add_argument("--samples", type=int, default=1_000_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=None)
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GaussMaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
