"""Trace analysis and export: per-tag error series, per-reader
real-vs-calculated distance comparisons, and CSV/JSON files.
"""
from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass

from .engine import FixRecord, Trace
from .errors import IoFailure
from .geometry import distance
from .serialize import trace_from_dict, trace_to_dict


@dataclass(frozen=True)
class ErrorSeries:
    """Error in meters per tick for one tag; None marks a NoFix gap."""

    tag_id: str
    points: tuple[tuple[int, float | None], ...]


@dataclass(frozen=True)
class DistanceComparison:
    """Per-reader real vs calculated distances at one tick."""

    tick: int
    tag_id: str
    rows: tuple[tuple[str, float, float, bool], ...]  # (reader_id, real, calculated, in_range)


@dataclass(frozen=True)
class Summary:
    mean: float | None
    max: float | None
    rmse: float | None
    fix_rate: float


def position_error(r: FixRecord) -> float | None:
    """Euclidean distance between true and estimated position."""
    if r.estimate is None:
        return None
    return distance(r.true_position, r.estimate)


def error_series(trace: Trace) -> list[ErrorSeries]:
    """One series per tag, ordered by tick, NoFix ticks kept as gaps."""
    by_tag: dict[str, list[tuple[int, float | None]]] = {}
    for r in trace:
        by_tag.setdefault(r.tag_id, []).append((r.tick, position_error(r)))
    return [
        ErrorSeries(tag_id=tag_id, points=tuple(sorted(points)))
        for tag_id, points in by_tag.items()
    ]


def distance_comparison(r: FixRecord) -> DistanceComparison:
    return DistanceComparison(
        tick=r.tick,
        tag_id=r.tag_id,
        rows=tuple(
            (rd.measurement.reader_id, rd.measurement.true_distance, rd.measurement.distance, rd.in_range)
            for rd in r.readings
        ),
    )


def summarize(series: ErrorSeries) -> Summary:
    """Aggregate statistics over the non-gap points of a series."""
    ticks = len(series.points)
    errors = [e for _, e in series.points if e is not None]
    if not errors or ticks == 0:
        return Summary(mean=None, max=None, rmse=None, fix_rate=0.0)
    return Summary(
        mean=sum(errors) / len(errors),
        max=max(errors),
        rmse=math.sqrt(sum(e * e for e in errors) / len(errors)),
        fix_rate=len(errors) / ticks,
    )


CSV_HEADER = (
    ["tick", "tag_id", "true_x", "true_y", "est_x", "est_y", "error"]
    + [f"r{i}_real" for i in range(1, 5)]
    + [f"r{i}_calculated" for i in range(1, 5)]
    + ["selected_ids"]
)


def _fmt(v: float | None) -> str:
    return "" if v is None else repr(v)


def export_csv(trace: Trace, path: str | os.PathLike) -> None:
    """Write the trace as CSV (UTF-8, LF, full float precision).

    NoFix estimates/errors become empty cells, never sentinels.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for r in trace:
                row = [
                    str(r.tick),
                    r.tag_id,
                    _fmt(r.true_position.x),
                    _fmt(r.true_position.y),
                    _fmt(r.estimate.x if r.estimate else None),
                    _fmt(r.estimate.y if r.estimate else None),
                    _fmt(r.error),
                ]
                row += [_fmt(rd.measurement.true_distance) for rd in r.readings]
                row += [_fmt(rd.measurement.distance) for rd in r.readings]
                row.append(";".join(r.selected))
                writer.writerow(row)
    except OSError as exc:
        raise IoFailure(f"cannot write CSV to {path}: {exc}") from exc


def export_json(trace: Trace, path: str | os.PathLike) -> None:
    """Write the trace as versioned JSON mirroring every record field."""
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(trace_to_dict(trace), fh)
    except OSError as exc:
        raise IoFailure(f"cannot write JSON to {path}: {exc}") from exc


def import_json(path: str | os.PathLike) -> Trace:
    """Read back a trace written by export_json."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return trace_from_dict(json.load(fh))
    except OSError as exc:
        raise IoFailure(f"cannot read JSON from {path}: {exc}") from exc
