"""Command-line front end.

Three subcommands:

  verify     run certification checks and report pass/fail
  transform  apply a named transform to a sampled test function
  whittaker  classify a field against the cokernel criterion, or tabulate
             the one-dimensional solution branches

Exit codes: 0 on success, 1 on a numerical failure (a non-degenerate check
violated its tolerance), 2 on usage errors (unknown check or operator,
missing input, quadrature grid above the cap without --force).

Thread count comes from --threads, else the HYPB_THREADS environment
variable; it is recorded in the output for provenance but the compute paths
are single-threaded by construction, so results are thread-count invariant.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .grid import Field, GridSpec, PlaneKind, lp_norm
from .report import reports_to_json
from . import testfuncs as tf
from . import transforms as tr
from . import verify as vf
from . import whittaker as wh

OP_ALIASES = {
    "c": "cauchy",
    "b": "beurling",
    "c_up": "cauchy_up",
    "c_down": "cauchy_down",
    "b_up": "beurling_up",
    "b_down": "beurling_down",
    "d_up": "bicauchy_up",
    "d_down": "bicauchy_down",
    "e": "bicauchy_real",
}

def _fail_usage(msg: str) -> "NoReturn":
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def parse_testfn(spec: str):
    try:
        return tf.parse_testfn(spec)
    except (TypeError, ValueError) as exc:
        _fail_usage(str(exc))


def parse_grid(text: str):
    parts = text.split(":")
    try:
        if len(parts) == 1:
            nx = ny = int(parts[0])
        elif len(parts) == 2:
            nx, ny = int(parts[0]), int(parts[1])
        else:
            raise ValueError(text)
        if nx >= 4 and ny >= 4:  # same floor the grid itself enforces
            return nx, ny
    except ValueError:
        pass
    _fail_usage(f"bad --grid {text!r}; expected n or nx:ny with n >= 4")


def parse_domain(text: str):
    parts = text.split(":")
    try:
        if len(parts) == 2:
            L, H = float(parts[0]), float(parts[1])
            if L > 0 and H > 0:
                return L, H
    except ValueError:
        pass
    _fail_usage(f"bad --domain {text!r}; expected L:H with positive sides")


def parse_range(text: str):
    parts = text.split(":")
    try:
        if len(parts) == 2:
            t0, t1 = float(parts[0]), float(parts[1])
            if 0 < t0 < t1:
                return t0, t1
    except ValueError:
        pass
    _fail_usage(f"bad --range {text!r}; expected t0:t1 with 0 < t0 < t1")


def resolve_threads(value):
    if value is not None:
        return value
    env = os.environ.get("HYPB_THREADS")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        _fail_usage(f"bad HYPB_THREADS value {env!r}")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--grid", default="256", help="cells per axis, n or nx:ny")
    p.add_argument("--domain", default=None, help="half-width and height, L:H")
    p.add_argument("--method", choices=("fft", "quadrature"), default="fft")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--force", action="store_true",
                   help="allow quadrature above the grid cap")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypb")
    sub = ap.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run certification checks")
    pv.add_argument("check", help="check id or 'all'")
    _add_common(pv)

    pt = sub.add_parser("transform", help="apply a transform to a test function")
    pt.add_argument("--op", required=True,
                    help="operator id or alias (e.g. b_down, c_up)")
    pt.add_argument("--testfn", default=None, help="name:key=val,... input field")
    pt.add_argument("--out", default=None, help="output CSV path (default stdout)")
    pt.add_argument("--csv", action="store_true", help="CSV output (the default)")
    _add_common(pt)

    pw = sub.add_parser("whittaker", help="cokernel classification and ODE tables")
    wsub = pw.add_subparsers(dest="subcommand", required=True)

    pc = wsub.add_parser("classify", help="test a field for cokernel membership")
    pc.add_argument("--testfn", default=None, help="name:key=val,... input field")
    pc.add_argument("--premultiply-M", dest="premultiply_m", action="store_true",
                    help="multiply the sampled field by Im z before classifying")
    pc.add_argument("--out", default=None, help="write the fitted multiplier table")
    pc.add_argument("--csv", action="store_true",
                    help="write the multiplier table as CSV (xi,re,im)")
    _add_common(pc)

    pb = wsub.add_parser("tabulate", help="tabulate a solution branch with residuals")
    pb.add_argument("--family", choices=("X", "Y"), required=True)
    pb.add_argument("--A", type=complex, default=0.0)
    pb.add_argument("--B", type=complex, default=1.0)
    pb.add_argument("--range", dest="trange", default="0.1:30")
    pb.add_argument("--points", type=int, default=200)
    pb.add_argument("--out", default=None, help="output CSV path (default stdout)")
    pb.add_argument("--csv", action="store_true", help="CSV output (the default)")
    _add_common(pb)
    return ap


def make_config(args) -> vf.RunConfig:
    nx, ny = parse_grid(args.grid)
    if args.domain is not None:
        L, H = parse_domain(args.domain)
    else:
        L, H = 2.8, 5.6
    cfg = vf.RunConfig(nx=nx, ny=ny, L=L, H=H, method=args.method, p=args.p,
                       tol=args.tol, seed=args.seed,
                       threads=resolve_threads(args.threads), force=args.force)
    if cfg.method == "quadrature" and max(nx, ny) > vf.QUAD_GRID_CAP and not cfg.force:
        _fail_usage(
            f"quadrature above {vf.QUAD_GRID_CAP}^2 is expensive; rerun with --force"
        )
    return cfg


def _write_rows(path, header, rows):
    lines = [header] + rows
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    cfg = make_config(args)
    name = args.check
    if name != "all" and name not in vf.CHECKS:
        _fail_usage(f"unknown check {name!r}; have {sorted(vf.CHECKS)}")
    reports = vf.run_checks(name, cfg)
    ok = vf.overall_pass(reports)
    if args.json:
        print(reports_to_json(reports))
    else:
        for r in reports:
            print(r.line())
        live = [r for r in reports if not r.parameters.get("degenerate")]
        ndeg = len(reports) - len(live)
        tail = f" ({ndeg} degenerate, excluded)" if ndeg else ""
        print(f"{'PASSED' if ok else 'FAILED'} "
              f"{sum(r.passed for r in live)}/{len(live)} checks{tail}")
    return 0 if ok else 1


def cmd_transform(args) -> int:
    cfg = make_config(args)
    if args.testfn is None:
        _fail_usage("transform needs --testfn")
    op = OP_ALIASES.get(args.op, args.op)
    if op not in tr.KERNEL_IDS:
        _fail_usage(f"unknown operator {args.op!r}; have "
                    f"{sorted(tr.KERNEL_IDS)} plus aliases {sorted(OP_ALIASES)}")
    fn = parse_testfn(args.testfn)
    plane = PlaneKind.UPPER if op not in ("cauchy", "beurling") else PlaneKind.FULL
    spec = GridSpec(L=cfg.L, H=cfg.H, nx=cfg.nx, ny=cfg.ny, plane=plane)
    f = tf.sample(fn, spec, "f")
    out = tr.transform(f, op, method=cfg.method)
    if args.json:
        print(json.dumps({
            "op": op, "testfn": args.testfn, "grid": spec.summary(),
            "method": cfg.method, "threads": cfg.threads,
            "input_l2": lp_norm(f, 2.0), "output_l2": lp_norm(out, 2.0),
        }, indent=2))
        if args.out is None and not args.csv:
            return 0
    X, Y = np.meshgrid(spec.x, spec.y)
    rows = [
        f"{X[i, j]:.17g},{Y[i, j]:.17g},{out.data[i, j].real:.17g},{out.data[i, j].imag:.17g}"
        for i in range(spec.ny) for j in range(spec.nx)
    ]
    _write_rows(args.out, "x,y,re,im", rows)
    return 0


def _classify_payload(res: wh.ClassifyResult) -> dict:
    return {
        "is_cokernel": bool(res.is_cokernel),
        "pos_energy_frac": float(res.pos_energy_frac),
        "fit_residual": float(res.fit_residual),
        "dyadic_growth": float(res.dyadic_growth),
        "weight_value": float(res.weight_value),
        "thresholds": res.thresholds,
    }


def cmd_classify(args) -> int:
    cfg = make_config(args)
    if args.testfn is None:
        _fail_usage("classify needs --testfn")
    fn = parse_testfn(args.testfn)
    spec = wh.default_classify_spec()
    f = tf.sample(fn, spec, "f")
    if args.premultiply_m:
        f = Field(spec, spec.y.reshape(-1, 1) * f.data)
    res = wh.lemma_a1_classify(f)
    payload = _classify_payload(res)
    payload["testfn"] = args.testfn
    payload["premultiply_M"] = bool(args.premultiply_m)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        verdict = "cokernel" if res.is_cokernel else "not cokernel"
        print(f"{args.testfn}: {verdict} "
              f"(pos_energy_frac={res.pos_energy_frac:.3e}, "
              f"fit_residual={res.fit_residual:.3e}, "
              f"dyadic_growth={res.dyadic_growth:.4f})")
    if args.out is not None or args.csv:
        rows = [
            f"{x:.17g},{b.real:.17g},{b.imag:.17g}"
            for x, b in zip(res.xi, res.b2)
        ]
        _write_rows(args.out, "xi,re,im", rows)
    return 0


def cmd_tabulate(args) -> int:
    make_config(args)
    t0, t1 = parse_range(args.trange)
    sol = wh.WhittakerSolution(args.family, args.A, args.B)
    ts = np.geomspace(t0, t1, args.points)
    vals = sol(ts)
    # pointwise residual of H'' = (1/4 + sign/t) H by the same 5-point stencil
    h = np.minimum(0.01 * ts, 0.05)
    d2 = (
        -sol(ts + 2 * h) + 16 * sol(ts + h) - 30 * vals + 16 * sol(ts - h)
        - sol(ts - 2 * h)
    ) / (12.0 * h**2)
    target = (0.25 + sol.sign / ts) * vals
    resid = np.abs(d2 - target) / (np.abs(vals) + np.abs(d2) + 1e-300)
    if args.json:
        print(json.dumps({
            "family": args.family, "A": [args.A.real, args.A.imag],
            "B": [args.B.real, args.B.imag], "range": [t0, t1],
            "points": args.points, "max_residual": float(resid.max()),
        }, indent=2))
        if args.out is None and not args.csv:
            return 0
    rows = [
        f"{t:.17g},{v.real:.17g},{v.imag:.17g},{r:.17g}"
        for t, v, r in zip(ts, np.asarray(vals, dtype=complex), resid)
    ]
    _write_rows(args.out, "t,re,im,residual", rows)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "transform":
        return cmd_transform(args)
    if args.command == "whittaker":
        if args.subcommand == "classify":
            return cmd_classify(args)
        return cmd_tabulate(args)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    raise SystemExit(main())
