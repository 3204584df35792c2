"""Command-line front end: parameter entry and JSON/CSV report generation.

Subcommands
    equilibria  --params a=..,b=..,c=..,d=..,e=..
    zero-hopf   --case i|ii|iii --c .. --omega .. [--d-free ..] [--e ..]
    zeros       unfolding flags (see below); averaged zeros + stability table
    orbit       unfolding flags + --eps; shooting result (+ trajectory CSV)
    sweep       unfolding flags + --eps-list; convergence report (+ CSV table)
    verify      --all; runs the eight-criterion acceptance suite

Common flags: --json PATH, --csv PATH, --quad-n N, --tol T, --sample-dt DT.

Exit codes: 0 success; 1 input/validation error; 2 numerical non-convergence
(the diagnostic payload is still written to --json when given).

JSON reports are canonical: keys sorted, floats as shortest round-trip
decimals, so parse-and-reserialize is byte-identical.  Files are written
atomically (temp file in the target directory, then rename).  Relative output
paths are resolved against the directory in LHBIF_REPORT_DIR when that
variable is set.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .averaging import average_quadrature, averaged_zeros, stability_analysis
from .errors import (
    BlowUpError,
    DegenerateParameterError,
    ExtractionError,
    LhbifError,
    NonHyperbolicError,
    OrbitNotFoundError,
)
from .model import SystemParams, delta, equilibria
from .orbits import IntegratorConfig, epsilon_sweep, find_periodic_orbit, integrate
from .reduction import UnfoldingSpec, first_order_field_numeric, perturb
from .spectrum import is_zero_hopf, zero_hopf_params
from .verify import run_all

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _jsonable(obj):
    """Recursively convert report values to canonical JSON-compatible types."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"im": float(obj.imag), "re": float(obj.real)}
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def canonical_json(report) -> str:
    """Canonical serialization: sorted keys, shortest round-trip floats."""
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def _resolve(path: str) -> str:
    base = os.environ.get("LHBIF_REPORT_DIR")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _atomic_write(path: str, text: str):
    path = _resolve(path)
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lhbif-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path: str, header, rows):
    import io

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    _atomic_write(path, buffer.getvalue())


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _parse_params_blob(blob: str) -> SystemParams:
    values = {}
    for item in blob.split(","):
        if "=" not in item:
            raise DegenerateParameterError(
                f"--params entries must look like a=1.0; got {item!r}"
            )
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in ("a", "b", "c", "d", "e"):
            raise DegenerateParameterError(f"unknown parameter {key!r}")
        try:
            values[key] = float(val)
        except ValueError:
            raise DegenerateParameterError(f"parameter {key} is not a number: {val!r}")
    missing = sorted(set("abcde") - set(values))
    if missing:
        raise DegenerateParameterError(f"missing parameters: {', '.join(missing)}")
    return SystemParams(**values)


def _add_output_flags(sub):
    sub.add_argument("--json", metavar="PATH", help="write the JSON report here")
    sub.add_argument("--csv", metavar="PATH", help="write the CSV artifact here")
    sub.add_argument("--quad-n", type=int, default=256, help="quadrature panels")
    sub.add_argument("--tol", type=float, default=1e-8, help="verification tolerance")
    sub.add_argument(
        "--sample-dt",
        type=float,
        default=None,
        help="uniform CSV sampling step (default: accepted integrator steps)",
    )


def _add_spec_flags(sub):
    sub.add_argument("--case", required=True, choices=("i", "ii", "iii"))
    sub.add_argument("--c", type=float, required=True)
    sub.add_argument("--omega", type=float, default=None)
    sub.add_argument("--a1", type=float, default=0.0)
    sub.add_argument("--b1", type=float, default=0.0)
    sub.add_argument("--d1", type=float, default=0.0)
    sub.add_argument("--e1", type=float, default=0.0)
    sub.add_argument("--d", type=float, default=None)
    sub.add_argument("--e", type=float, default=0.0)
    sub.add_argument("--branch", choices=("plus", "minus"), default="plus")


def _spec_from_args(args) -> UnfoldingSpec:
    return UnfoldingSpec(
        case=args.case,
        c=args.c,
        omega=args.omega,
        a1=args.a1,
        b1=args.b1,
        d1=args.d1,
        e1=args.e1,
        d=args.d,
        e=args.e,
        branch=args.branch,
    )


def _base_report(args, argv) -> dict:
    return {
        "invocation": {
            "argv": list(argv),
            "subcommand": args.command,
            "version": __version__,
        },
        "tolerances": {"quad_n": args.quad_n, "tol": args.tol},
        "stages": {},
    }


def _staged(report, name, fn):
    t0 = time.perf_counter()
    payload = fn()
    report["stages"][name] = payload
    report.setdefault("wall_time", {})[name] = time.perf_counter() - t0
    return payload


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _params_dict(p: SystemParams) -> dict:
    return {"a": p.a, "b": p.b, "c": p.c, "d": p.d, "e": p.e}


def _zero_dict(z) -> dict:
    return {
        "label": z.label,
        "location": z.location,
        "residual": z.residual,
        "jac_det": z.jac_det,
        "char_cubic": z.char_cubic,
        "eigenvalues": z.eigenvalues,
        "verdict": z.verdict,
        "axis": z.axis_flag,
        "trivial": z.trivial,
        "count": z.multiplicity,
    }


def _cmd_equilibria(args, argv, report):
    p = _parse_params_blob(args.params)

    def stage():
        eq = equilibria(p)
        return {
            "params": _params_dict(p),
            "delta": eq.delta,
            "has_line": eq.has_line,
            "points": [
                {"kind": pt.kind.name.lower(), "state": pt.state} for pt in eq.points
            ],
        }

    payload = _staged(report, "equilibria", stage)
    print(f"Delta = {payload['delta']:.10g}  (equilibrium line: {payload['has_line']})")
    for pt in payload["points"]:
        coords = ", ".join(f"{v: .10g}" for v in pt["state"])
        print(f"  {pt['kind']:<13} ({coords})")
    return EXIT_OK


def _cmd_zero_hopf(args, argv, report):
    p = zero_hopf_params(
        args.case, args.c, omega=args.omega, d_free=args.d_free, e=args.e
    )

    def stage():
        at = np.zeros(4) if args.case == "i" else np.array([0.0, 0.0, 0.0, delta(p)])
        cert = is_zero_hopf(p, at, tol=args.tol)
        out = {"params": _params_dict(p), "at": at, "certified": cert is not None}
        if cert is not None:
            out["omega"] = cert.omega
            out["residual"] = cert.residual
            out["eigenvalues"] = cert.eigenvalues
        return out

    payload = _staged(report, "zero_hopf", stage)
    pd = payload["params"]
    print(
        "constructed params: "
        + ", ".join(f"{k} = {pd[k]:.10g}" for k in ("a", "b", "c", "d", "e"))
    )
    if payload["certified"]:
        print(
            f"zero-Hopf certificate: omega = {payload['omega']:.10g}, "
            f"eigen-residual = {payload['residual']:.3e}"
        )
        return EXIT_OK
    print("zero-Hopf certification FAILED", file=sys.stderr)
    return EXIT_NUMERIC


def _cmd_zeros(args, argv, report):
    spec = _spec_from_args(args)

    def stage():
        zeros = averaged_zeros(spec)
        stability = stability_analysis(spec, zeros)
        out = {
            "spec": _spec_dict(spec),
            "discriminants": stability.discriminants,
            "zeros": [_zero_dict(z) for z in zeros],
        }
        # independent cross-check: quadrature average of the numeric pipeline
        # must vanish at every off-axis zero
        field_num = None
        checks = {}
        for z in zeros:
            if z.axis_flag:
                continue
            if field_num is None:
                field_num = first_order_field_numeric(spec)
            checks[z.label] = float(
                np.max(np.abs(average_quadrature(field_num, z.location, n=args.quad_n)))
            )
        out["quadrature_check"] = checks
        return out

    payload = _staged(report, "zeros", stage)
    print(f"discriminants: {payload['discriminants']}")
    print(f"{'label':<6} {'r':>12} {'z':>12} {'w':>12} {'det':>12}  verdict")
    for z in payload["zeros"]:
        r, zz, w = z["location"]
        print(
            f"{z['label']:<6} {r:>12.6g} {zz:>12.6g} {w:>12.6g} "
            f"{z['jac_det']:>12.6g}  {z['verdict']}"
        )
    worst = max(payload["quadrature_check"].values(), default=0.0)
    if worst > args.tol:
        print(f"quadrature cross-check FAILED: {worst:.3e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _spec_dict(spec: UnfoldingSpec) -> dict:
    return {
        "case": spec.case,
        "c": spec.c,
        "omega": spec.omega,
        "a1": spec.a1,
        "b1": spec.b1,
        "d1": spec.d1,
        "e1": spec.e1,
        "d": spec.d,
        "e": spec.e,
        "branch": spec.branch,
    }


def _pick_seed(spec: UnfoldingSpec, label: str | None):
    zeros = [z for z in averaged_zeros(spec) if not z.trivial]
    if not zeros:
        raise DegenerateParameterError("the averaged map has no nontrivial zeros")
    if label is None:
        off_axis = [z for z in zeros if not z.axis_flag]
        return (off_axis or zeros)[0]
    for z in zeros:
        if z.label == label:
            return z
    known = ", ".join(z.label for z in zeros)
    raise DegenerateParameterError(f"unknown seed label {label!r} (have: {known})")


def _orbit_dict(orb) -> dict:
    return {
        "eps": orb.eps,
        "initial_state": orb.initial_state,
        "period": orb.period,
        "closure_residual": orb.closure_residual,
        "floquet_multipliers": orb.floquet_multipliers,
        "reduced_section_point": orb.reduced_section_point,
    }


def _cmd_orbit(args, argv, report):
    spec = _spec_from_args(args)
    seed = _pick_seed(spec, args.seed)
    report["stages"]["seed"] = _zero_dict(seed)

    def stage():
        orb = find_periodic_orbit(spec, args.eps, seed)
        return {"spec": _spec_dict(spec), "orbit": _orbit_dict(orb)}, orb

    t0 = time.perf_counter()
    payload, orb = stage()
    report["stages"]["orbit"] = payload
    report.setdefault("wall_time", {})["orbit"] = time.perf_counter() - t0

    if args.csv:
        params = perturb(spec, args.eps)
        cfg = IntegratorConfig(dense_output=args.sample_dt is not None)
        traj = integrate(params, orb.initial_state, orb.period, cfg)
        if args.sample_dt is not None:
            ts = np.arange(0.0, orb.period + 0.5 * args.sample_dt, args.sample_dt)
            ts = ts[ts <= orb.period]
            states = traj.dense(ts).T
        else:
            ts, states = traj.t, traj.states
        _write_csv(
            args.csv,
            ("t", "x", "y", "z", "w"),
            (np.concatenate([[t], s]) for t, s in zip(ts, states)),
        )

    print(
        f"orbit at eps = {orb.eps:g}: period = {orb.period:.10g}, "
        f"closure residual = {orb.closure_residual:.3e}"
    )
    mults = ", ".join(f"{m:.6g}" for m in orb.floquet_multipliers)
    print(f"Floquet multipliers: {mults}")
    return EXIT_OK


def _cmd_sweep(args, argv, report):
    spec = _spec_from_args(args)
    seed = _pick_seed(spec, args.seed)
    report["stages"]["seed"] = _zero_dict(seed)
    try:
        eps_list = [float(v) for v in args.eps_list.split(",")]
    except ValueError:
        raise DegenerateParameterError(f"--eps-list is not numeric: {args.eps_list!r}")

    def stage():
        rep = epsilon_sweep(spec, seed, eps_list)
        return {
            "spec": _spec_dict(spec),
            "eps_grid": rep.eps_grid,
            "distances": rep.distances,
            "state_distances": rep.state_distances,
            "period_errors": rep.period_errors,
            "fitted_order": rep.fitted_order,
            "state_order": rep.state_order,
            "order_residual": rep.order_residual,
            "stability_agreement": rep.stability_agreement,
            "exponent_ratios": rep.exponent_ratios,
            "failures": {repr(k): v for k, v in rep.failures.items()},
            "orbits": [_orbit_dict(o) for o in rep.orbits],
        }

    payload = _staged(report, "sweep", stage)
    if args.csv:
        _write_csv(
            args.csv,
            ("eps", "distance", "state_distance", "period_error"),
            zip(
                payload["eps_grid"],
                payload["distances"],
                payload["state_distances"],
                payload["period_errors"],
            ),
        )
    print(
        f"fitted distance order {payload['fitted_order']:.4f}, "
        f"state amplitude order {payload['state_order']:.4f}"
    )
    for eps, dist, perr in zip(
        payload["eps_grid"], payload["distances"], payload["period_errors"]
    ):
        print(f"  eps = {eps:g}: seed distance {dist:.6g}, period error {perr:.3e}")
    if payload["failures"]:
        for eps, msg in payload["failures"].items():
            print(f"  eps = {eps}: FAILED ({msg})", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_verify(args, argv, report):
    if not args.all:
        raise DegenerateParameterError("verify requires --all")
    results = run_all()
    report["stages"]["verify"] = [
        {
            "number": r.number,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "seconds": r.seconds,
        }
        for r in results
    ]
    report["wall_time"] = {"verify": sum(r.seconds for r in results)}
    for r in results:
        print(r.line)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_NUMERIC


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lhbif",
        description="Zero-Hopf bifurcation toolkit for the 4D Lorenz-Haken system",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("equilibria", help="list equilibria of raw parameters")
    sub.add_argument("--params", required=True, metavar="a=..,b=..,c=..,d=..,e=..")
    _add_output_flags(sub)

    sub = subs.add_parser("zero-hopf", help="construct and certify a zero-Hopf point")
    sub.add_argument("--case", required=True, choices=("i", "ii", "iii"))
    sub.add_argument("--c", type=float, required=True)
    sub.add_argument("--omega", type=float, default=None)
    sub.add_argument("--d-free", type=float, default=None, help="d for case ii")
    sub.add_argument("--e", type=float, default=None, help="free e (cases ii, iii)")
    _add_output_flags(sub)

    sub = subs.add_parser("zeros", help="averaged zeros and stability table")
    _add_spec_flags(sub)
    _add_output_flags(sub)

    sub = subs.add_parser("orbit", help="shoot for the periodic orbit at one eps")
    _add_spec_flags(sub)
    sub.add_argument("--eps", type=float, required=True)
    sub.add_argument("--seed", default=None, help="averaged-zero label to seed from")
    _add_output_flags(sub)

    sub = subs.add_parser("sweep", help="orbit convergence sweep over an eps list")
    _add_spec_flags(sub)
    sub.add_argument("--eps-list", required=True, metavar="E1,E2,...")
    sub.add_argument("--seed", default=None, help="averaged-zero label to seed from")
    _add_output_flags(sub)

    sub = subs.add_parser("verify", help="run the acceptance suite")
    sub.add_argument("--all", action="store_true")
    _add_output_flags(sub)

    return parser


_HANDLERS = {
    "equilibria": _cmd_equilibria,
    "zero-hopf": _cmd_zero_hopf,
    "zeros": _cmd_zeros,
    "orbit": _cmd_orbit,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; map usage problems to the input code
        return EXIT_INPUT if exc.code not in (0, None) else 0
    report = _base_report(args, argv)
    code = EXIT_OK
    try:
        code = _HANDLERS[args.command](args, argv, report)
    except (DegenerateParameterError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except (OrbitNotFoundError, BlowUpError, ExtractionError, NonHyperbolicError) as exc:
        print(str(exc), file=sys.stderr)
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_NUMERIC
    except LhbifError as exc:
        print(str(exc), file=sys.stderr)
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_NUMERIC
    if getattr(args, "json", None):
        _atomic_write(args.json, canonical_json(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
