"""Exact iterated-sumset computations through the lifted cone over a point set."""

from .errors import (
    BudgetExceeded,
    DegenerateLatticeError,
    DimensionMismatch,
    HypothesisError,
    SumsetError,
)
from .sumset import PointSet, iterated_sumset, minkowski_sum, normalize

__all__ = [
    "BudgetExceeded",
    "DegenerateLatticeError",
    "DimensionMismatch",
    "HypothesisError",
    "PointSet",
    "SumsetError",
    "iterated_sumset",
    "minkowski_sum",
    "normalize",
]

__version__ = "0.1.0"
