"""Planar geometry: distances, the three-anchor closed-form position
solve, and the pixel/meter coordinate mapping.

All functions here are pure and operate on immutable value types.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateGeometry, DuplicateAnchor

WORLD_SIZE_M = 100.0
SCREEN_SIZE_PX = 500.0
METERS_PER_PIXEL = WORLD_SIZE_M / SCREEN_SIZE_PX  # 0.2 m/px

#: Singularity cutoff for the 2x2 determinant, in squared-meter units.
DET_EPSILON = 1e-12

#: Anchors closer than this are treated as coincident.
ANCHOR_EPSILON = 1e-9


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Point2D:
    """A position in meters, world frame."""

    x: float
    y: float

    def __post_init__(self) -> None:
        _require_finite("Point2D coordinate", self.x, self.y)


@dataclass(frozen=True)
class PixelPoint:
    """A position in screen pixels (500x500 frame)."""

    px: float
    py: float

    def __post_init__(self) -> None:
        _require_finite("PixelPoint coordinate", self.px, self.py)


@dataclass(frozen=True)
class RangeMeasurement:
    """One reader's measured distance to a tag.

    ``distance`` is what the reader reports: the geometric distance plus
    any obstacle-induced inflation (and, when enabled, a noise term).
    """

    reader_id: str
    anchor: Point2D
    distance: float
    true_distance: float
    loss_added: float
    noise: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(
            "RangeMeasurement field", self.distance, self.true_distance, self.loss_added
        )
        if self.true_distance < 0:
            raise ValueError(f"true_distance must be >= 0, got {self.true_distance}")
        if self.loss_added < 0:
            raise ValueError(f"loss_added must be >= 0, got {self.loss_added}")
        if self.distance < 0:
            raise ValueError(f"distance must be >= 0, got {self.distance}")
        expected = self.true_distance + self.loss_added + self.noise
        if self.distance != expected:
            raise ValueError(
                f"distance {self.distance} != true + loss + noise = {expected}"
            )

    @classmethod
    def build(
        cls,
        reader_id: str,
        anchor: Point2D,
        true_distance: float,
        loss_added: float = 0.0,
        noise: float = 0.0,
    ) -> "RangeMeasurement":
        return cls(
            reader_id=reader_id,
            anchor=anchor,
            distance=true_distance + loss_added + noise,
            true_distance=true_distance,
            loss_added=loss_added,
            noise=noise,
        )


@dataclass(frozen=True)
class LinearSystem2x2:
    """Coefficients of { Ax + By = C ; Dx + Ey = F }."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self) -> None:
        _require_finite(
            "LinearSystem2x2 coefficient",
            self.a, self.b, self.c, self.d, self.e, self.f,
        )


def distance(p: Point2D, q: Point2D) -> float:
    """Euclidean distance in meters."""
    return math.hypot(p.x - q.x, p.y - q.y)


def build_linear_system(
    m1: RangeMeasurement, m2: RangeMeasurement, m3: RangeMeasurement
) -> LinearSystem2x2:
    """Reduce the three range circles to a 2x2 linear system.

    Subtracting the second circle equation from the first (and the third
    from the second) cancels the quadratic terms, leaving two linear
    equations in the unknown (x, y).
    """
    p1, p2, p3 = m1.anchor, m2.anchor, m3.anchor
    for pa, pb in ((p1, p2), (p2, p3), (p1, p3)):
        if distance(pa, pb) < ANCHOR_EPSILON:
            raise DuplicateAnchor(f"coincident anchors at ({pa.x}, {pa.y})")
    r1, r2, r3 = m1.distance, m2.distance, m3.distance
    return LinearSystem2x2(
        a=-2 * p1.x + 2 * p2.x,
        b=-2 * p1.y + 2 * p2.y,
        c=r1**2 - r2**2 - p1.x**2 + p2.x**2 - p1.y**2 + p2.y**2,
        d=-2 * p2.x + 2 * p3.x,
        e=-2 * p2.y + 2 * p3.y,
        f=r2**2 - r3**2 - p2.x**2 + p3.x**2 - p2.y**2 + p3.y**2,
    )


def solve_linear_system(
    s: LinearSystem2x2, det_epsilon: float = DET_EPSILON
) -> Point2D:
    """Closed-form solution of the 2x2 system.

    x = (CE - FB) / (EA - BD),  y = (CD - AF) / (BD - AE)
    """
    det = s.e * s.a - s.b * s.d
    if abs(det) <= det_epsilon:
        raise DegenerateGeometry(f"singular system, |EA - BD| = {abs(det)}")
    x = (s.c * s.e - s.f * s.b) / det
    y = (s.c * s.d - s.a * s.f) / (s.b * s.d - s.a * s.e)
    return Point2D(x, y)


def trilaterate(
    m1: RangeMeasurement,
    m2: RangeMeasurement,
    m3: RangeMeasurement,
    det_epsilon: float = DET_EPSILON,
) -> Point2D:
    """Position from three range measurements.

    With exact ranges this is the unique intersection of the three
    circles. With inconsistent ranges (attenuated or noisy) the same
    closed form is evaluated anyway; the resulting error is reported
    downstream rather than corrected here.
    """
    return solve_linear_system(build_linear_system(m1, m2, m3), det_epsilon)


def px_to_m(p: PixelPoint) -> Point2D:
    """Screen pixels to world meters (0.2 m/px on both axes)."""
    return Point2D(p.px * METERS_PER_PIXEL, p.py * METERS_PER_PIXEL)


def m_to_px(p: Point2D) -> PixelPoint:
    """World meters to screen pixels."""
    return PixelPoint(p.x / METERS_PER_PIXEL, p.y / METERS_PER_PIXEL)
