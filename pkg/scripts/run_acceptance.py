#!/usr/bin/env python3
"""Standalone acceptance harness: one pass/fail line per criterion.

    python3 scripts/run_acceptance.py [--seed N] [--only K]

Exits 0 iff every criterion passes inside its wall-clock budget.
"""
import argparse
import sys

from quantale_engine.acceptance import CRITERIA, run_all, run_criterion


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--only", type=int, choices=[n for n, *_ in CRITERIA])
    args = parser.parse_args()

    results = (
        [run_criterion(args.only, args.seed)] if args.only
        else run_all(args.seed)
    )
    ok = True
    for result in results:
        print(result.line())
        ok = ok and result.ok and result.within_budget
    print("acceptance:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
