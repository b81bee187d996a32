from .polytope import PolytopeSet, is_feasible
from .projection import (
    distance_to_set,
    hausdorff_distance,
    project_polytope,
    project_simplex,
    project_simplex_batch,
)

__all__ = [
    "PolytopeSet",
    "is_feasible",
    "project_polytope",
    "project_simplex",
    "project_simplex_batch",
    "distance_to_set",
    "hausdorff_distance",
]
