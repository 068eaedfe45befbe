"""Positivity and optimality analysis of generalized Choi maps on 3x3 matrices."""
from .core import GeneralizedMap, build_map, from_matrix, gauge_fix
from .errors import ChoiMapError
from .tolerances import DEFAULT_TOL, ToleranceConfig

__all__ = [
    "ChoiMapError",
    "DEFAULT_TOL",
    "GeneralizedMap",
    "ToleranceConfig",
    "build_map",
    "from_matrix",
    "gauge_fix",
]
