#!/usr/bin/env python3
"""Drive the universal-system verification at chosen scales.

Runs the exhaustive check for small n and a seeded randomized check for a
larger alphabet, printing one line per configuration plus the reachability
counts of the constructed systems.
"""

import argparse
import time

from kiselman.universal import (
    build_universal,
    exhaustive_words,
    random_words,
    reachability_report,
    verify_theorem,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--exhaustive-n", type=int, default=4)
    ap.add_argument("--exhaustive-len", type=int, default=8)
    ap.add_argument("--random-n", type=int, default=5)
    ap.add_argument("--random-count", type=int, default=100_000)
    ap.add_argument("--random-len", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for n in range(1, args.exhaustive_n + 1):
        t0 = time.perf_counter()
        report = verify_theorem(n, exhaustive_words(n, args.exhaustive_len))
        status = "ok" if report.ok else f"{len(report.counterexamples)} COUNTEREXAMPLES"
        print(f"exhaustive n={n} len<={args.exhaustive_len}: "
              f"{report.checked} words, {status} ({time.perf_counter()-t0:.1f}s)")

    t0 = time.perf_counter()
    report = verify_theorem(
        args.random_n,
        random_words(args.random_n, args.random_count, args.random_len, args.seed),
    )
    status = "ok" if report.ok else f"{len(report.counterexamples)} COUNTEREXAMPLES"
    print(f"random n={args.random_n} count={args.random_count} "
          f"len<={args.random_len} seed={args.seed}: {status} "
          f"({time.perf_counter()-t0:.1f}s)")

    for n in range(1, args.exhaustive_n + 1):
        rr = reachability_report(build_universal(n))
        print(f"reachability n={n}: defined {rr.defined_sizes} "
              f"reachable {rr.reachable_sizes} "
              f"system states reached {rr.reachable_state_count}")


if __name__ == "__main__":
    main()
