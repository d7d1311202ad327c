"""Versioned JSON formats for scenarios and traces.

Both formats round-trip exactly: floats are emitted with Python's
shortest round-trip repr, so parse(serialize(x)) == x bit for bit.
"""
from __future__ import annotations

import json
from typing import Any

from .engine import FixRecord, Reader, ReaderReading, Scenario, Tag, Trace, _validate
from .errors import InvalidConfig
from .geometry import Point2D, RangeMeasurement
from .signal_model import Obstacle, material_by_name

SCHEMA_VERSION = 1


def _point(p: Point2D) -> list[float]:
    return [p.x, p.y]


def scenario_to_dict(s: Scenario) -> dict[str, Any]:
    return {
        "version": SCHEMA_VERSION,
        "world": s.world_size,
        "readers": [
            {"id": r.id, "x": r.position.x, "y": r.position.y, "range": r.range_m}
            for r in s.readers
        ],
        "tags": [
            {
                "id": t.id,
                "x": t.position.x,
                "y": t.position.y,
                "waypoints": [_point(w) for w in t.waypoints],
                "speed": t.speed,
            }
            for t in s.tags
        ],
        "obstacles": [
            {
                "id": o.id,
                "orientation": o.orientation,
                "x": o.anchor.x,
                "y": o.anchor.y,
                "length": o.length,
                "material": o.material.name,
                "thickness_cm": o.thickness_cm,
            }
            for o in s.obstacles
        ],
        "gain": s.gain,
        "noise_sigma": s.noise_sigma,
        "seed": s.seed,
        "tick": s.tick,
    }


def scenario_from_dict(d: dict[str, Any]) -> Scenario:
    try:
        version = d.get("version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise InvalidConfig(f"unsupported scenario schema version {version}")
        readers = tuple(
            Reader(id=r["id"], position=Point2D(r["x"], r["y"]), range_m=r.get("range", 50.0))
            for r in d["readers"]
        )
        tags = tuple(
            Tag(
                id=t["id"],
                position=Point2D(t["x"], t["y"]),
                waypoints=tuple(Point2D(w[0], w[1]) for w in t.get("waypoints", [])),
                speed=t.get("speed", 0.0),
            )
            for t in d["tags"]
        )
        obstacles = tuple(
            Obstacle(
                id=o["id"],
                orientation=o["orientation"],
                anchor=Point2D(o["x"], o["y"]),
                length=o["length"],
                material=material_by_name(o["material"]),
                thickness_cm=o.get("thickness_cm", 0.0),
            )
            for o in d["obstacles"]
        )
        scenario = Scenario(
            readers=readers,
            tags=tags,
            obstacles=obstacles,
            gain=d.get("gain", 0.05),
            noise_sigma=d.get("noise_sigma", 0.0),
            seed=d.get("seed", 0),
            tick=d.get("tick", 0),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidConfig(f"malformed scenario document: {exc!r}") from exc
    return _validate(scenario)


def scenario_to_json(s: Scenario, indent: int | None = 2) -> str:
    return json.dumps(scenario_to_dict(s), indent=indent)


def scenario_from_json(text: str) -> Scenario:
    return scenario_from_dict(json.loads(text))


def record_to_dict(r: FixRecord) -> dict[str, Any]:
    return {
        "tick": r.tick,
        "tag_id": r.tag_id,
        "true_position": _point(r.true_position),
        "estimate": _point(r.estimate) if r.estimate is not None else None,
        "selected": list(r.selected),
        "error": r.error,
        "measurements": [
            {
                "reader_id": rd.measurement.reader_id,
                "anchor": _point(rd.measurement.anchor),
                "distance": rd.measurement.distance,
                "true_distance": rd.measurement.true_distance,
                "loss_added": rd.measurement.loss_added,
                "noise": rd.measurement.noise,
                "in_range": rd.in_range,
            }
            for rd in r.readings
        ],
    }


def record_from_dict(d: dict[str, Any]) -> FixRecord:
    readings = tuple(
        ReaderReading(
            measurement=RangeMeasurement(
                reader_id=m["reader_id"],
                anchor=Point2D(m["anchor"][0], m["anchor"][1]),
                distance=m["distance"],
                true_distance=m["true_distance"],
                loss_added=m["loss_added"],
                noise=m.get("noise", 0.0),
            ),
            in_range=m["in_range"],
        )
        for m in d["measurements"]
    )
    est = d["estimate"]
    return FixRecord(
        tick=d["tick"],
        tag_id=d["tag_id"],
        true_position=Point2D(d["true_position"][0], d["true_position"][1]),
        estimate=Point2D(est[0], est[1]) if est is not None else None,
        readings=readings,
        selected=tuple(d["selected"]),
        error=d["error"],
    )


def trace_to_dict(trace: Trace) -> dict[str, Any]:
    return {"version": SCHEMA_VERSION, "records": [record_to_dict(r) for r in trace]}


def trace_from_dict(d: dict[str, Any]) -> Trace:
    return [record_from_dict(r) for r in d["records"]]


def trace_to_json(trace: Trace, indent: int | None = None) -> str:
    return json.dumps(trace_to_dict(trace), indent=indent)


def trace_from_json(text: str) -> Trace:
    return trace_from_dict(json.loads(text))
