#!/usr/bin/env python
"""Run the brute-force oracle over a large seeded batch and print the report."""

import argparse
import sys
import time

from vat_game import oracle
from vat_game.model import SanctionBaseMode


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--draws", type=int, default=10_000)
    parser.add_argument(
        "--mode", choices=[m.value for m in SanctionBaseMode], default="corrected"
    )
    args = parser.parse_args()

    start = time.perf_counter()
    report = oracle.validate(args.seed, args.draws, SanctionBaseMode(args.mode))
    elapsed = time.perf_counter() - start
    for line in report.summary_lines():
        print(line)
    print(f"elapsed: {elapsed:.1f}s")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
