"""Command-line frontend.

Subcommands: metric, metric-at, gfun, hfun, geodesic, schwarz, verify.
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
non-convergence.  The FBH_LOG environment variable (error | info | debug)
controls diagnostics on standard error; results go to --out or standard
output.  Report paths accept --plot to render a figure next to the
delimited output.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import geodesic, kobayashi, rootsolve, schwarz, verify
from .domain import DomainSig, Point, TangentVector
from .errors import FbhMetricError, NonConvergenceError
from .serialize import json_dumps, parse_complex, write_csv

log = logging.getLogger("fbhmetric")

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _complex_flag(text: str) -> complex:
    try:
        return parse_complex(text)
    except FbhMetricError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="ascii")


def _metric_payload(result: kobayashi.MetricResult) -> dict:
    return {
        "K": result.K,
        "K2": result.K_squared,
        "branch": result.branch,
        "v": result.v,
        "alpha_roots": list(result.alpha_roots),
        "beta": result.beta,
    }


def _cmd_metric(args) -> int:
    result = kobayashi.metric_normal(args.b, args.X, args.Y, args.tol)
    _emit(json_dumps(_metric_payload(result)), args.out)
    return 0


def _cmd_metric_at(args) -> int:
    result = kobayashi.metric(Point(args.z, args.w), TangentVector(args.dz, args.dw), args.tol)
    _emit(json_dumps(_metric_payload(result)), args.out)
    return 0


def _scalar_table(args, fn, column: str):
    tm = rootsolve.t_max(args.b)
    if column == "g":
        ts = np.linspace(0.0, tm, args.n)
    else:
        ts = np.linspace(0.0, tm, args.n + 2)[1:-1]
    return ts, fn(args.b, ts)


def _cmd_gfun(args) -> int:
    ts, values = _scalar_table(args, rootsolve.g_function, "g")
    rows = list(zip(ts, values))
    if args.out is None:
        _emit_csv_to_stdout(("t", "g"), rows)
    else:
        write_csv(args.out, ("t", "g"), rows)
    if args.plot:
        from .plotting import plot_branch_discriminant

        beta = rootsolve.solve_beta(args.b)
        plot_branch_discriminant(args.b, ts, values, beta, args.plot)
        log.info("figure written to %s", args.plot)
    return 0


def _cmd_hfun(args) -> int:
    ts, values = _scalar_table(args, rootsolve.h_function, "h")
    if args.out is None:
        _emit_csv_to_stdout(("t", "h"), list(zip(ts, values)))
    else:
        write_csv(args.out, ("t", "h"), list(zip(ts, values)))
    if args.plot:
        from .plotting import plot_root_equation

        plot_root_equation(args.b, ts, values, args.plot)
        log.info("figure written to %s", args.plot)
    return 0


def _emit_csv_to_stdout(header, rows) -> None:
    from .serialize import format_float

    sys.stdout.write(",".join(header) + "\n")
    for row in rows:
        sys.stdout.write(",".join(format_float(float(x)) for x in row) + "\n")


def _cmd_geodesic(args) -> int:
    if args.sample is not None:
        params = geodesic.sample_admissible(args.seed, args.sample)
    else:
        if args.a2 is None or args.alpha2 is None:
            raise FbhMetricError("geodesic needs either --sample N or both --a2 and --alpha2")
        params = geodesic.make_family(args.family, args.a2, args.alpha2).params()
    thetas = np.linspace(0.0, 2.0 * np.pi, args.n, endpoint=False)
    coords, residuals = geodesic.boundary_trace(params, thetas)
    n = params.n
    header = ["theta"]
    for j in range(n):
        header += [f"re_z{j + 1}", f"im_z{j + 1}"]
    header += ["re_w", "im_w", "rho_residual"]
    rows = []
    for k, theta in enumerate(thetas):
        row = [theta]
        for j in range(n):
            row += [coords[k, j].real, coords[k, j].imag]
        row += [coords[k, n].real, coords[k, n].imag, abs(residuals[k])]
        rows.append(row)
    if args.out is None:
        _emit_csv_to_stdout(header, rows)
    else:
        write_csv(args.out, header, rows)
    if args.plot:
        from .plotting import plot_geodesic_trace

        plot_geodesic_trace(thetas, coords, residuals, args.plot)
        log.info("figure written to %s", args.plot)
    return 0


def _cmd_schwarz(args) -> int:
    sig = DomainSig(args.target_n, args.target_m)
    maps = schwarz.builtin_examples(sig)
    if args.map is not None:
        maps = [m for m in maps if args.map in m.label]
        if not maps:
            raise FbhMetricError(f"no built-in map matches {args.map!r}")
    reports = [schwarz.audit(m, args.tol) for m in maps]
    payload = {
        "target": {"n": sig.n, "m": sig.m},
        "reports": [
            {
                "label": r.label,
                "lambda": r.lam,
                "lower_bound": r.lower_bound,
                "normal_residual": r.normal_residual,
                "tangential_norm": r.tangential_norm,
                "sqrt_lambda": r.sqrt_lambda,
                "pass_i": r.pass_i,
                "pass_ii": r.pass_ii,
            }
            for r in reports
        ],
    }
    _emit(json_dumps(payload), args.out)
    return 0 if all(r.pass_i and r.pass_ii for r in reports) else 1


def _cmd_verify(args) -> int:
    grid = tuple(float(x) for x in args.b_grid.split(","))
    if args.suite == "all":
        reports = verify.run_all(args.seed, args.trials, workers=args.workers)
    elif args.suite == "seams":
        reports = [verify.probe_seams(grid, out=args.seams_csv)]
    else:
        reports = [verify.run_suite(args.suite, args.seed, args.trials, workers=args.workers)]
    failures_total = sum(r.failures for r in reports)
    payload = {
        "seed": args.seed,
        "trials": args.trials,
        "failures_total": failures_total,
        "suites": [r.to_dict() for r in reports],
    }
    _emit(json_dumps(payload), args.out)
    if args.plot and any(r.suite == "seams" for r in reports):
        import tempfile

        from .plotting import plot_seam_sweep

        with tempfile.TemporaryDirectory() as tmp:
            csv_path = Path(tmp) / "seams.csv"
            verify.probe_seams(grid, out=csv_path)
            rows = [
                tuple(float(x) for x in line.split(","))
                for line in csv_path.read_text().splitlines()[1:]
            ]
        plot_seam_sweep(rows, args.plot)
        log.info("figure written to %s", args.plot)
    return 0 if failures_total == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fbhmetric",
        description="Kobayashi pseudometric, geodesic disks and boundary "
        "Schwarz-lemma audits for Fock-Bargmann-Hartogs domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metric", help="pseudometric at the normal-position base point (0, b)")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--X", type=_complex_flag, required=True)
    p.add_argument("--Y", type=_complex_flag, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_metric)

    p = sub.add_parser("metric-at", help="pseudometric at an arbitrary interior point of D_{1,1}")
    p.add_argument("--z", type=_complex_flag, required=True)
    p.add_argument("--w", type=_complex_flag, required=True)
    p.add_argument("--dz", type=_complex_flag, required=True)
    p.add_argument("--dw", type=_complex_flag, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_metric_at)

    p = sub.add_parser("gfun", help="tabulate the branch discriminant over [0, -2 ln b]")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--out")
    p.add_argument("--plot")
    p.set_defaults(fn=_cmd_gfun)

    p = sub.add_parser("hfun", help="tabulate the root-equation left-hand side on (0, -2 ln b)")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--out")
    p.add_argument("--plot")
    p.set_defaults(fn=_cmd_hfun)

    p = sub.add_parser("geodesic", help="trace a geodesic disk around the unit circle")
    p.add_argument("--family", choices=list(geodesic.FAMILIES), default="A")
    p.add_argument("--a2", type=_complex_flag)
    p.add_argument("--alpha2", type=_complex_flag)
    p.add_argument("--sample", type=int, help="sample admissible parameters for D_{n,1} instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--out")
    p.add_argument("--plot")
    p.set_defaults(fn=_cmd_geodesic)

    p = sub.add_parser("schwarz", help="audit the built-in maps D_{1,1} -> D_{n,m}")
    p.add_argument("--target-n", type=int, default=1)
    p.add_argument("--target-m", type=int, default=1)
    p.add_argument("--map", help="only built-ins whose label contains this text")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_schwarz)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", choices=("all",) + verify.SUITE_NAMES, default="all")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--b-grid", default="0.2,0.35,0.5,0.65,0.8")
    p.add_argument("--seams-csv")
    p.add_argument("--out")
    p.add_argument("--plot")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    level = _LOG_LEVELS.get(os.environ.get("FBH_LOG", "error").lower(), logging.ERROR)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NonConvergenceError as exc:
        log.error("numeric non-convergence: %s", exc)
        return 3
    except FbhMetricError as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
