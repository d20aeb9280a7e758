"""Run every acceptance criterion and print one line each (exit 1 if any fails)."""

import argparse
import sys

from picard_fuchs.suite import run_suite

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--threads", type=int, default=1)
ap.add_argument("--only", help="comma-separated criterion numbers")
args = ap.parse_args()

numbers = [int(x) for x in args.only.split(",")] if args.only else None
results = run_suite(numbers, threads=args.threads)
for r in results:
    print(f"{r.line()}  ({r.seconds:.1f}s)")
sys.exit(0 if all(r.ok for r in results) else 1)
