#!/usr/bin/env python3
"""How the fix rate responds to the reader range setting.

Runs a moving tag across the world for a ladder of reader ranges and
prints the fraction of ticks that produced a position fix.

Usage: python3 scripts/range_sensitivity.py [--ticks N]
"""
from __future__ import annotations

import argparse

from rfidsim import engine, stats
from rfidsim.engine import DEFAULT_READER_POSITIONS, Reader, Tag
from rfidsim.geometry import Point2D


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ticks", type=int, default=100)
    args = parser.parse_args()

    waypoints = (Point2D(90, 10), Point2D(90, 90), Point2D(10, 90), Point2D(10, 10))
    print(f"{'range m':>8} {'fix rate':>9} {'mean err m':>11}")
    for range_m in (40, 50, 60, 70, 80, 90, 100, 120):
        readers = tuple(
            Reader(f"r{i + 1}", p, range_m=float(range_m))
            for i, p in enumerate(DEFAULT_READER_POSITIONS)
        )
        tag = Tag("t1", Point2D(10, 10), waypoints=waypoints, speed=3.0)
        scenario = engine.new_scenario(readers=readers, tags=(tag,))
        _, trace = engine.run(scenario, args.ticks)
        (series,) = stats.error_series(trace)
        s = stats.summarize(series)
        mean = f"{s.mean:.2e}" if s.mean is not None else "-"
        print(f"{range_m:>8} {s.fix_rate:>9.2f} {mean:>11}")


if __name__ == "__main__":
    main()
