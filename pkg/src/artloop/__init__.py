"""Control loops as unwound compute cycles, checked square by square."""
from .core import (
    AbstractState, BitWord, CommutationReport, CommutationSquare, ComputeCube, Corners,
    CornerMismatch, KindMismatch, Metric, MetricKind, MissingQuantity, MissingValue,
    NonInvertible, PhysicalState, Quantity, QuantityMap, RepresentationPair, ShapeMismatch,
    SQUARE_ORDER, Unit, check_cube, check_square, distance, instantiate, represent,
)
from .dynamics import NonFiniteState, StepMethod, VectorField, integrate, step

__version__ = "0.1.0"

__all__ = [
    "AbstractState", "BitWord", "CommutationReport", "CommutationSquare", "ComputeCube", "Corners",
    "CornerMismatch", "KindMismatch", "Metric", "MetricKind", "MissingQuantity", "MissingValue",
    "NonInvertible", "PhysicalState", "Quantity", "QuantityMap", "RepresentationPair", "ShapeMismatch",
    "SQUARE_ORDER", "Unit", "check_cube", "check_square", "distance", "instantiate", "represent",
    "NonFiniteState", "StepMethod", "VectorField", "integrate", "step",
]
