"""Core building blocks: special functions, geometry, media and data models."""

from .errors import (
    OSMError,
    DomainError,
    SingularityError,
    ProximityError,
    ConfigError,
    SolverError,
    MissingDataError,
    DegenerateError,
    SchemaError,
)
from .specfun import bessel_j0, bessel_j1, bessel_y0, bessel_y1, hankel1_0, hankel1_1
from .geometry import direction_from_angle, incident_directions, circle_nodes
from .shapes import (
    ContrastMap,
    Disk,
    Rectangle,
    Kite,
    SquareWithCavity,
    Union,
    Difference,
    contrast_eval,
    kite_boundary,
    medium_from_name,
    distance_to_support,
)
from .models import (
    MeasurementCircle,
    SamplingGrid,
    NoiseSpec,
    CauchyDataset,
    FarFieldMatrix,
    IndicatorImage,
)

__all__ = [
    "OSMError",
    "DomainError",
    "SingularityError",
    "ProximityError",
    "ConfigError",
    "SolverError",
    "MissingDataError",
    "DegenerateError",
    "SchemaError",
    "bessel_j0",
    "bessel_j1",
    "bessel_y0",
    "bessel_y1",
    "hankel1_0",
    "hankel1_1",
    "direction_from_angle",
    "incident_directions",
    "circle_nodes",
    "ContrastMap",
    "Disk",
    "Rectangle",
    "Kite",
    "SquareWithCavity",
    "Union",
    "Difference",
    "contrast_eval",
    "kite_boundary",
    "medium_from_name",
    "distance_to_support",
    "MeasurementCircle",
    "SamplingGrid",
    "NoiseSpec",
    "CauchyDataset",
    "FarFieldMatrix",
    "IndicatorImage",
]
