#!/usr/bin/env python3
"""Sweep all small DAGs and compare |HK| with the join-based dynamics."""

import argparse
import json

from kiselman.conjectures import conjecture_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=4)
    ap.add_argument("--search-on-mismatch", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="write the JSON report here")
    args = ap.parse_args()

    report = conjecture_sweep(
        max_vertices=args.max_vertices,
        search_on_mismatch=args.search_on_mismatch,
        seed=args.seed,
    )
    for row in report.rows:
        edges = ",".join(f"{i}->{j}" for i, j in row.dag.sorted_edges()) or "-"
        if row.skipped:
            print(f"n={row.dag.n} [{edges}]: skipped ({row.skipped})")
            continue
        mark = "match" if row.match else "MISMATCH"
        extra = f" search_best={row.search_best}" if row.search_best else ""
        print(f"n={row.dag.n} [{edges}]: hk={row.hk_size} "
              f"dynamics={row.dynamics_size} {mark}{extra} ({row.seconds:.2f}s)")
    print(f"matched {report.matched}, mismatched {report.mismatched}, "
          f"skipped {report.skips}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"schema": 1, **report.to_json()}, fh, indent=2, sort_keys=True)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
