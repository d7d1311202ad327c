#!/usr/bin/env python3
"""Sweep the material table: run the same obstructed scenario once per
material and report how the localization error responds.

Usage: python3 scripts/material_error_sweep.py [--ticks N] [--gain G]
"""
from __future__ import annotations

import argparse

from rfidsim import engine, stats
from rfidsim.engine import DEFAULT_READER_POSITIONS, Reader, Tag
from rfidsim.geometry import Point2D
from rfidsim.signal_model import Obstacle, builtin_materials


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ticks", type=int, default=50)
    parser.add_argument("--gain", type=float, default=0.05)
    args = parser.parse_args()

    readers = tuple(
        Reader(f"r{i + 1}", p, range_m=120.0)
        for i, p in enumerate(DEFAULT_READER_POSITIONS)
    )
    tag = Tag("t1", Point2D(70, 50))

    print(f"{'material':<24} {'coeff':>6} {'thick cm':>8} {'mean err m':>11} {'rmse m':>9}")
    base = engine.new_scenario(readers=readers, tags=(tag,), gain=args.gain)
    _, trace = engine.run(base, args.ticks)
    (series,) = stats.error_series(trace)
    s = stats.summarize(series)
    print(f"{'(free space)':<24} {'-':>6} {'-':>8} {s.mean:>11.4f} {s.rmse:>9.4f}")

    for material in builtin_materials():
        wall = Obstacle("o1", "vertical", Point2D(40, 20), 60.0, material)
        scenario = engine.new_scenario(
            readers=readers, tags=(tag,), obstacles=(wall,), gain=args.gain
        )
        _, trace = engine.run(scenario, args.ticks)
        (series,) = stats.error_series(trace)
        s = stats.summarize(series)
        print(
            f"{material.name:<24} {material.coefficient:>6.2f} {material.thickness_cm:>8.2f}"
            f" {s.mean:>11.4f} {s.rmse:>9.4f}"
        )


if __name__ == "__main__":
    main()
