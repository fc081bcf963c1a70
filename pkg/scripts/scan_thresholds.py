#!/usr/bin/env python3
"""Print the excluded-locus threshold table for both tori.

Scans every odd prime power up to --q-max and reports, per torus, the
exact excluded count |Y|, the torus order, the ratio against 1/|W|, and
the empirically minimal q from which the inequality always holds.
"""

import argparse

from depthzero.uniqueness import threshold_scan


def run(q_max: int) -> None:
    for kind in (1, 2):
        report = threshold_scan(kind, q_max)
        print(f"torus {kind}: bound 1/{8 if kind == 1 else 4}, "
              f"empirical threshold q >= {report.empirical_min}")
        print("  q   excluded  order    ratio      holds")
        for row in report.rows:
            print(f"  {row.q:<4d}{row.excluded:<10d}{row.torus_order:<9d}"
                  f"{str(row.ratio):<11s}{row.holds}")
        print()


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--q-max", type=int, default=200)
    args = parser.parse_args()
    run(args.q_max)
