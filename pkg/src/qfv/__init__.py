"""Exact computations on toric quiver flag varieties and their tilting quivers."""
from .errors import QFVError
from .quiver import Quiver, beilinson, dimension, rank_sums, validate_quiver
from .tilting import TiltingQuiver, compare_vertices, cuboid_vertices, tilting_arrows, truncate

__version__ = "0.1.0"

__all__ = [
    "QFVError",
    "Quiver",
    "TiltingQuiver",
    "beilinson",
    "compare_vertices",
    "cuboid_vertices",
    "dimension",
    "rank_sums",
    "tilting_arrows",
    "truncate",
    "validate_quiver",
]
