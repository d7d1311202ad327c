"""Deterministic 2-D RFID indoor-localization simulator.

Readers measure ranges to tags, obstacles inflate those ranges according
to a per-material permeability table, and tag positions are recovered
with a closed-form three-anchor trilateration.
"""
from .engine import (
    FixRecord,
    Reader,
    ReaderReading,
    Scenario,
    Tag,
    default_scenario,
    new_scenario,
    run,
    step,
)
from .geometry import (
    LinearSystem2x2,
    PixelPoint,
    Point2D,
    RangeMeasurement,
    build_linear_system,
    distance,
    m_to_px,
    px_to_m,
    solve_linear_system,
    trilaterate,
)
from .signal_model import (
    Crossing,
    Material,
    Obstacle,
    attenuated_distance,
    builtin_materials,
    crossings,
    interactive_material,
)

__all__ = [
    "Crossing",
    "FixRecord",
    "LinearSystem2x2",
    "Material",
    "Obstacle",
    "PixelPoint",
    "Point2D",
    "RangeMeasurement",
    "Reader",
    "ReaderReading",
    "Scenario",
    "Tag",
    "attenuated_distance",
    "build_linear_system",
    "builtin_materials",
    "crossings",
    "default_scenario",
    "distance",
    "interactive_material",
    "m_to_px",
    "new_scenario",
    "px_to_m",
    "run",
    "solve_linear_system",
    "step",
    "trilaterate",
]

__version__ = "0.1.0"
