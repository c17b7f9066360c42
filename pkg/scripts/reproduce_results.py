#!/usr/bin/env python3
"""Reproduce the maximal-area result table for even n.

Runs the optimizer for each requested n, prints the reference-style table
(pendant start, literature bound, upper bound, computed area, iterations),
and optionally exports per-run artifacts.

    python scripts/reproduce_results.py                  # committed subset
    python scripts/reproduce_results.py --full           # even 6..128
    python scripts/reproduce_results.py --n 6 14 32 --out runs/
"""

import argparse
import sys
import time
from pathlib import Path

from optigon.ccp import CcpStatus, run_sweep
from optigon.reporting import export_run, render_table_text, sweep_row

DEFAULT_SUBSET = [6, 8, 10, 12, 16, 32]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="*", help="explicit list of even n")
    parser.add_argument("--full", action="store_true", help="run all even n in 6..128")
    parser.add_argument("--out", type=Path, help="export run artifacts here")
    args = parser.parse_args()

    if args.full:
        ns = list(range(6, 129, 2))
    elif args.n:
        ns = args.n
    else:
        ns = DEFAULT_SUBSET

    rows = []
    t0 = time.time()
    for result in run_sweep(ns):
        if result.status is not CcpStatus.CONVERGED:
            print(f"n={result.n} FAILED: {result.message}", file=sys.stderr)
            continue
        rows.append(sweep_row(result))
        print(
            f"n={result.n:>3d} area={result.area:.10f} k={result.iterations:>3d} "
            f"elapsed={time.time() - t0:7.1f}s",
            file=sys.stderr,
        )
        if args.out:
            export_run(result, args.out)
    if rows:
        print(render_table_text(rows), end="")
    return 0 if len(rows) == len(ns) else 1


if __name__ == "__main__":
    sys.exit(main())
