"""Material table, obstacle geometry and the range-inflation loss model.

Obstacles are axis-aligned zero-width segments. Each signal ray that
properly crosses an obstacle picks up additive range error proportional
to the material's permeability coefficient and the obstacle thickness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InvalidObstacle, UnknownKind
from .geometry import WORLD_SIZE_M, Point2D, distance

#: Default conversion from (coefficient * cm of material) to meters of
#: added range. A scenario-level knob; 0.05 keeps losses in the
#: 0.01 - 4 m band across the whole material table.
DEFAULT_GAIN = 0.05

#: Crossings closer than this to a segment endpoint are treated as
#: grazing contacts and excluded.
GRAZE_EPSILON = 1e-9


@dataclass(frozen=True)
class Material:
    name: str
    coefficient: float
    thickness_cm: float

    def __post_init__(self) -> None:
        if self.coefficient <= 0:
            raise ValueError(f"coefficient must be > 0, got {self.coefficient}")
        if self.thickness_cm <= 0:
            raise ValueError(f"thickness_cm must be > 0, got {self.thickness_cm}")


_MATERIALS: tuple[Material, ...] = (
    Material("Tree structure", 2.19, 2.07),
    Material("Thin Wall", 1.29, 5.93),
    Material("Glass", 4.00, 0.24),
    Material("Iron door", 2.07, 4.45),
    Material("Ready-made panel wall", 2.44, 4.17),
    Material("Plywood", 2.55, 1.12),
    Material("Styrofoam", 1.12, 9.91),
    Material("Brick", 4.20, 15),
    Material("Concrete block", 2.30, 30),
    Material("Limestone", 7.51, 10),
)

_MATERIALS_BY_NAME = {m.name: m for m in _MATERIALS}

#: Mapping from the interactive obstacle kinds to table rows.
_KIND_TO_MATERIAL = {
    "wall": "Thin Wall",
    "glass": "Glass",
    "wood": "Tree structure",
    "iron": "Iron door",
}


def builtin_materials() -> tuple[Material, ...]:
    """The built-in permeability table, in table order."""
    return _MATERIALS


def material_by_name(name: str) -> Material:
    try:
        return _MATERIALS_BY_NAME[name]
    except KeyError:
        raise UnknownKind(f"unknown material {name!r}") from None


def interactive_material(kind: str) -> Material:
    """Resolve one of the four interactive obstacle kinds to a material."""
    try:
        return _MATERIALS_BY_NAME[_KIND_TO_MATERIAL[kind]]
    except KeyError:
        raise UnknownKind(f"unknown obstacle kind {kind!r}") from None


def materials_json() -> list[dict]:
    """Table export for UI dropdowns."""
    return [
        {"name": m.name, "coefficient": m.coefficient, "thickness_cm": m.thickness_cm}
        for m in _MATERIALS
    ]


@dataclass(frozen=True)
class Obstacle:
    """An axis-aligned wall segment.

    ``anchor`` is the segment start; a horizontal obstacle extends in +x,
    a vertical one in +y. Thickness only feeds the loss formula, not the
    geometry.
    """

    id: str
    orientation: str  # "horizontal" | "vertical"
    anchor: Point2D
    length: float
    material: Material
    thickness_cm: float = field(default=0.0)

    def __post_init__(self) -> None:
        if self.orientation not in ("horizontal", "vertical"):
            raise InvalidObstacle(f"orientation must be horizontal|vertical, got {self.orientation!r}")
        if self.length <= 0:
            raise InvalidObstacle(f"length must be > 0, got {self.length}")
        if self.thickness_cm == 0.0:
            object.__setattr__(self, "thickness_cm", self.material.thickness_cm)
        if self.thickness_cm <= 0:
            raise InvalidObstacle(f"thickness_cm must be > 0, got {self.thickness_cm}")
        ex, ey = self.end.x, self.end.y
        for cx, cy in ((self.anchor.x, self.anchor.y), (ex, ey)):
            if not (0 <= cx <= WORLD_SIZE_M and 0 <= cy <= WORLD_SIZE_M):
                raise InvalidObstacle(f"obstacle {self.id!r} leaves the world at ({cx}, {cy})")

    @property
    def end(self) -> Point2D:
        if self.orientation == "horizontal":
            return Point2D(self.anchor.x + self.length, self.anchor.y)
        return Point2D(self.anchor.x, self.anchor.y + self.length)


@dataclass(frozen=True)
class Crossing:
    obstacle_id: str
    point: Point2D


def _segment_intersection(
    a: Point2D, b: Point2D, c: Point2D, d: Point2D
) -> Point2D | None:
    """Proper intersection of segments a-b and c-d, or None.

    Intersections within GRAZE_EPSILON meters of any segment endpoint are
    treated as grazing and rejected. Parallel (incl. collinear) segments
    never intersect properly.
    """
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    denom = rx * sy - ry * sx
    if denom == 0:
        return None
    qpx, qpy = c.x - a.x, c.y - a.y
    t = (qpx * sy - qpy * sx) / denom  # along a-b
    u = (qpx * ry - qpy * rx) / denom  # along c-d
    len_ab = math.hypot(rx, ry)
    len_cd = math.hypot(sx, sy)
    # Strictly interior on both segments, with a metric endpoint margin.
    if not (GRAZE_EPSILON < t * len_ab and GRAZE_EPSILON < (1 - t) * len_ab):
        return None
    if not (GRAZE_EPSILON < u * len_cd and GRAZE_EPSILON < (1 - u) * len_cd):
        return None
    return Point2D(a.x + t * rx, a.y + t * ry)


def crossings(
    start: Point2D, end: Point2D, obstacles: Iterable[Obstacle]
) -> list[Crossing]:
    """Obstacles properly crossed by the open segment start -> end.

    Ordered by distance from ``start``. A zero-length ray has no
    crossings.
    """
    if start == end:
        return []
    hits: list[tuple[float, Crossing]] = []
    for obs in obstacles:
        pt = _segment_intersection(start, end, obs.anchor, obs.end)
        if pt is not None:
            hits.append((distance(start, pt), Crossing(obs.id, pt)))
    hits.sort(key=lambda h: h[0])
    return [c for _, c in hits]


def attenuated_distance(
    true_distance: float,
    cs: Sequence[Crossing],
    obstacles: Mapping[str, Obstacle] | Sequence[Obstacle],
    gain: float = DEFAULT_GAIN,
) -> tuple[float, float]:
    """Apply obstacle losses to a true distance.

    Returns (measured, loss_added) with
    loss_added = gain * sum(coefficient * thickness_cm) over crossings.
    """
    if true_distance < 0:
        raise ValueError(f"true_distance must be >= 0, got {true_distance}")
    if gain < 0:
        raise ValueError(f"gain must be >= 0, got {gain}")
    if not isinstance(obstacles, Mapping):
        obstacles = {o.id: o for o in obstacles}
    loss = 0.0
    for c in cs:
        obs = obstacles[c.obstacle_id]
        loss += gain * obs.material.coefficient * obs.thickness_cm
    return true_distance + loss, loss
