"""Critical points of linear objectives on hypersurfaces by homotopy continuation."""

from ._core import (
    Problem,
    algebraic_degree,
    derangement,
    lower_hull_cells,
    parse_problem,
    random_dense_problem,
    refined_degree,
    serialize_problem,
    solve,
    tropical_check,
)

__all__ = [
    "Problem",
    "algebraic_degree",
    "derangement",
    "lower_hull_cells",
    "parse_problem",
    "random_dense_problem",
    "refined_degree",
    "serialize_problem",
    "solve",
    "tropical_check",
]
