"""Exception hierarchy shared across the simulator."""
from __future__ import annotations


class SimError(Exception):
    """Base class for all simulator errors."""


class GeometryError(SimError):
    pass


class DuplicateAnchor(GeometryError):
    """Two of the three anchors coincide; the subtraction step is vacuous."""


class DegenerateGeometry(GeometryError):
    """The anchor triple is (near-)collinear; the 2x2 system is singular."""


class UnknownKind(SimError):
    """Obstacle kind token outside the supported set."""


class InvalidConfig(SimError):
    pass


class InvalidObstacle(SimError):
    pass


class UnknownObstacle(SimError):
    pass


class UnknownReader(SimError):
    pass


class InvalidRange(SimError):
    pass


class UnknownTag(SimError):
    pass


class OutOfBounds(SimError):
    pass


class NoFix(SimError):
    """Fewer than three in-range readers; no position estimate possible."""


class IoFailure(SimError):
    """Export destination could not be written."""
