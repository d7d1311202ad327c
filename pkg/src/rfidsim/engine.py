"""Scenario state and the per-tick measurement -> selection ->
trilateration pipeline.

Scenarios are immutable values; every mutation returns a new, revalidated
scenario. This keeps runs replayable and snapshots trivially shareable.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Sequence

from . import geometry, signal_model
from .errors import (
    DegenerateGeometry,
    DuplicateAnchor,
    InvalidConfig,
    InvalidObstacle,
    InvalidRange,
    NoFix,
    OutOfBounds,
    UnknownObstacle,
    UnknownReader,
    UnknownTag,
)
from .geometry import Point2D, RangeMeasurement, distance, trilaterate
from .signal_model import DEFAULT_GAIN, Obstacle, attenuated_distance, crossings

WORLD_SIZE_M = geometry.WORLD_SIZE_M
DEFAULT_READER_RANGE_M = 50.0
READER_COUNT = 4

#: Default reader placement (the paper's screenshots are not legible
#: enough to pin exact coordinates; corners-inset is our choice).
DEFAULT_READER_POSITIONS = (
    Point2D(10, 10),
    Point2D(90, 10),
    Point2D(10, 90),
    Point2D(90, 90),
)


def _in_world(p: Point2D) -> bool:
    return 0 <= p.x <= WORLD_SIZE_M and 0 <= p.y <= WORLD_SIZE_M


@dataclass(frozen=True)
class Reader:
    id: str
    position: Point2D
    range_m: float = DEFAULT_READER_RANGE_M


@dataclass(frozen=True)
class Tag:
    id: str
    position: Point2D
    waypoints: tuple[Point2D, ...] = ()
    speed: float = 0.0  # meters per tick


@dataclass(frozen=True)
class ReaderReading:
    """One reader's measurement plus its range verdict for this tick."""

    measurement: RangeMeasurement
    in_range: bool


@dataclass(frozen=True)
class FixRecord:
    tick: int
    tag_id: str
    true_position: Point2D
    estimate: Point2D | None
    readings: tuple[ReaderReading, ...]
    selected: tuple[str, ...]
    error: float | None


Trace = list[FixRecord]


@dataclass(frozen=True)
class Scenario:
    readers: tuple[Reader, ...]
    tags: tuple[Tag, ...]
    obstacles: tuple[Obstacle, ...] = ()
    gain: float = DEFAULT_GAIN
    noise_sigma: float = 0.0
    seed: int = 0
    tick: int = 0
    world_size: float = WORLD_SIZE_M


def _validate(s: Scenario) -> Scenario:
    if len(s.readers) != READER_COUNT:
        raise InvalidConfig(f"exactly {READER_COUNT} readers required, got {len(s.readers)}")
    ids = [r.id for r in s.readers]
    if len(set(ids)) != len(ids):
        raise InvalidConfig(f"duplicate reader ids: {ids}")
    for r in s.readers:
        if not _in_world(r.position):
            raise InvalidConfig(f"reader {r.id!r} outside world at ({r.position.x}, {r.position.y})")
        if r.range_m <= 0:
            raise InvalidConfig(f"reader {r.id!r} range must be > 0, got {r.range_m}")
    if _all_collinear([r.position for r in s.readers]):
        raise InvalidConfig("reader anchors are all collinear")
    if not s.tags:
        raise InvalidConfig("at least one tag required")
    tag_ids = [t.id for t in s.tags]
    if len(set(tag_ids)) != len(tag_ids):
        raise InvalidConfig(f"duplicate tag ids: {tag_ids}")
    for t in s.tags:
        if not _in_world(t.position):
            raise InvalidConfig(f"tag {t.id!r} outside world at ({t.position.x}, {t.position.y})")
        if t.speed < 0:
            raise InvalidConfig(f"tag {t.id!r} speed must be >= 0, got {t.speed}")
        for w in t.waypoints:
            if not _in_world(w):
                raise InvalidConfig(f"tag {t.id!r} waypoint outside world at ({w.x}, {w.y})")
    obs_ids = [o.id for o in s.obstacles]
    if len(set(obs_ids)) != len(obs_ids):
        raise InvalidConfig(f"duplicate obstacle ids: {obs_ids}")
    if s.gain < 0:
        raise InvalidConfig(f"gain must be >= 0, got {s.gain}")
    if s.noise_sigma < 0:
        raise InvalidConfig(f"noise_sigma must be >= 0, got {s.noise_sigma}")
    if s.tick < 0:
        raise InvalidConfig(f"tick must be >= 0, got {s.tick}")
    return s


def _all_collinear(points: Sequence[Point2D]) -> bool:
    a, b = points[0], points[1]
    for c in points[2:]:
        area2 = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
        if abs(area2) > 1e-9:
            return False
    return True


def default_scenario() -> Scenario:
    return new_scenario(
        readers=tuple(
            Reader(id=f"r{i + 1}", position=p)
            for i, p in enumerate(DEFAULT_READER_POSITIONS)
        ),
        tags=(Tag(id="t1", position=Point2D(50, 50)),),
    )


def new_scenario(
    readers: Sequence[Reader],
    tags: Sequence[Tag],
    obstacles: Sequence[Obstacle] = (),
    gain: float = DEFAULT_GAIN,
    noise_sigma: float = 0.0,
    seed: int = 0,
) -> Scenario:
    return _validate(
        Scenario(
            readers=tuple(readers),
            tags=tuple(tags),
            obstacles=tuple(obstacles),
            gain=gain,
            noise_sigma=noise_sigma,
            seed=seed,
        )
    )


def _noise(s: Scenario, tick: int, tag_id: str, reader_id: str) -> float:
    if s.noise_sigma == 0:
        return 0.0
    rng = random.Random(f"{s.seed}:{tick}:{tag_id}:{reader_id}")
    return rng.gauss(0.0, s.noise_sigma)


def measure(s: Scenario, tag: Tag, tick: int | None = None) -> tuple[ReaderReading, ...]:
    """Measure the tag from all four readers at the current obstacle set."""
    if tick is None:
        tick = s.tick
    obstacles = {o.id: o for o in s.obstacles}
    readings = []
    for reader in s.readers:
        true_d = distance(reader.position, tag.position)
        cs = crossings(reader.position, tag.position, s.obstacles)
        measured, loss = attenuated_distance(true_d, cs, obstacles, s.gain)
        noise = _noise(s, tick, tag.id, reader.id)
        if measured + noise < 0:
            noise = -measured  # clamp: a reader never reports negative range
        m = RangeMeasurement.build(reader.id, reader.position, true_d, loss, noise)
        readings.append(ReaderReading(m, in_range=m.distance <= reader.range_m))
    return tuple(readings)


def select_readers(readings: Sequence[ReaderReading]) -> tuple[str, ...]:
    """Ids of the three in-range readers with the smallest measured
    distance; ties broken by ascending reader id."""
    in_range = [r.measurement for r in readings if r.in_range]
    if len(in_range) < 3:
        raise NoFix(f"only {len(in_range)} readers in range")
    in_range.sort(key=lambda m: (m.distance, m.reader_id))
    return tuple(m.reader_id for m in in_range[:3])


def _advance(tag: Tag) -> Tag:
    """Move one tick along the waypoint path, stopping at the last one."""
    if not tag.waypoints or tag.speed == 0:
        return tag
    pos = tag.position
    budget = tag.speed
    waypoints = list(tag.waypoints)
    while waypoints and budget > 0:
        target = waypoints[0]
        gap = distance(pos, target)
        if gap <= budget:
            pos = target
            budget -= gap
            waypoints.pop(0)
        else:
            frac = budget / gap
            pos = Point2D(pos.x + (target.x - pos.x) * frac, pos.y + (target.y - pos.y) * frac)
            budget = 0.0
    return replace(tag, position=pos, waypoints=tuple(waypoints))


def _fix(s: Scenario, tag: Tag, tick: int) -> FixRecord:
    readings = measure(s, tag, tick)
    by_id = {r.measurement.reader_id: r.measurement for r in readings}
    estimate: Point2D | None = None
    selected: tuple[str, ...] = ()
    error: float | None = None
    try:
        selected = select_readers(readings)
        estimate = trilaterate(*(by_id[rid] for rid in selected))
        error = distance(tag.position, estimate)
    except (NoFix, DegenerateGeometry, DuplicateAnchor):
        estimate = None
        error = None
    return FixRecord(
        tick=tick,
        tag_id=tag.id,
        true_position=tag.position,
        estimate=estimate,
        readings=readings,
        selected=selected if estimate is not None else (),
        error=error,
    )


def step(s: Scenario) -> tuple[Scenario, list[FixRecord]]:
    """Advance one tick: move tags, then measure and localize each."""
    tick = s.tick + 1
    moved = tuple(_advance(t) for t in s.tags)
    records = [_fix(s, tag, tick) for tag in moved]
    return replace(s, tags=moved, tick=tick), records


def run(s: Scenario, n: int) -> tuple[Scenario, Trace]:
    """Run n ticks, collecting all fix records in order."""
    if n < 0:
        raise ValueError(f"tick count must be >= 0, got {n}")
    trace: Trace = []
    for _ in range(n):
        s, records = step(s)
        trace.extend(records)
    return s, trace


def set_reader_range(s: Scenario, reader_id: str, range_m: float) -> Scenario:
    if range_m <= 0:
        raise InvalidRange(f"range must be > 0, got {range_m}")
    if reader_id not in {r.id for r in s.readers}:
        raise UnknownReader(f"no reader {reader_id!r}")
    readers = tuple(
        replace(r, range_m=range_m) if r.id == reader_id else r for r in s.readers
    )
    return _validate(replace(s, readers=readers))


def add_obstacle(s: Scenario, o: Obstacle) -> Scenario:
    if o.id in {x.id for x in s.obstacles}:
        raise InvalidObstacle(f"duplicate obstacle id {o.id!r}")
    return _validate(replace(s, obstacles=s.obstacles + (o,)))


def remove_obstacle(s: Scenario, obstacle_id: str) -> Scenario:
    if obstacle_id not in {x.id for x in s.obstacles}:
        raise UnknownObstacle(f"no obstacle {obstacle_id!r}")
    return _validate(
        replace(s, obstacles=tuple(o for o in s.obstacles if o.id != obstacle_id))
    )


def move_tag(s: Scenario, tag_id: str, to: Point2D) -> Scenario:
    if tag_id not in {t.id for t in s.tags}:
        raise UnknownTag(f"no tag {tag_id!r}")
    if not _in_world(to):
        raise OutOfBounds(f"({to.x}, {to.y}) outside the {WORLD_SIZE_M}x{WORLD_SIZE_M} m world")
    tags = tuple(
        replace(t, position=to, waypoints=()) if t.id == tag_id else t for t in s.tags
    )
    return _validate(replace(s, tags=tags))


def set_gain(s: Scenario, gain: float) -> Scenario:
    return _validate(replace(s, gain=gain))


def set_noise(s: Scenario, noise_sigma: float) -> Scenario:
    return _validate(replace(s, noise_sigma=noise_sigma))
