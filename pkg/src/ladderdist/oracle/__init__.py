"""Brute-force genus distributions by enumerating rotation systems."""

from ._kernels import BACKENDS, HAVE_NUMBA, default_backend
from .enumerate import DEFAULT_BUDGET, BudgetExceeded, NonIntegerGenus, enumerate_distribution
from .graphs import (
    GraphError,
    Multigraph,
    OutOfRange,
    RotationSystem,
    build_named_graph,
    face_count,
    genus_of,
    iter_rotation_systems,
    parse_edge_list,
    read_edge_list,
)

__all__ = [
    "BACKENDS",
    "HAVE_NUMBA",
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "GraphError",
    "Multigraph",
    "NonIntegerGenus",
    "OutOfRange",
    "RotationSystem",
    "build_named_graph",
    "default_backend",
    "enumerate_distribution",
    "face_count",
    "genus_of",
    "iter_rotation_systems",
    "parse_edge_list",
    "read_edge_list",
]
