#!/usr/bin/env python3
"""Run the certification battery and optionally dump the JSON report.

Examples:
    python3 scripts/run_battery.py
    python3 scripts/run_battery.py --checks hardy cup-norm --tol 1e-4
    python3 scripts/run_battery.py --out reports/battery.json
"""

import argparse
import pathlib
import sys
import time

from hypb import verify as vf
from hypb.report import reports_to_json


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    ap.add_argument("--checks", nargs="+", default=["all"],
                    help="check ids (default: the whole registry)")
    ap.add_argument("--grid", type=int, default=256)
    ap.add_argument("--method", choices=("fft", "quadrature"), default="fft")
    ap.add_argument("--tol", type=float, default=None)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="write the JSON report here")
    args = ap.parse_args(argv)

    cfg = vf.RunConfig(nx=args.grid, ny=args.grid, method=args.method,
                       tol=args.tol, seed=args.seed)
    names = "all" if args.checks == ["all"] else args.checks
    t0 = time.perf_counter()
    reports = vf.run_checks(names, cfg)
    dt = time.perf_counter() - t0
    for r in reports:
        print(r.line())
    live = [r for r in reports if not r.parameters.get("degenerate")]
    ok = vf.overall_pass(reports)
    print(f"{'PASSED' if ok else 'FAILED'} {sum(r.passed for r in live)}/{len(live)} "
          f"checks in {dt:.1f}s")
    if args.out:
        path = pathlib.Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(reports_to_json(reports))
        print(f"wrote {path}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
