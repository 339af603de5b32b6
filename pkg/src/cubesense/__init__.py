"""Exact combinatorics of low-sensitivity subsets of the Boolean hypercube."""

__version__ = "0.1.0"

from .hypercube import (  # noqa: E402
    MAX_N,
    DimensionError,
    EmptySetError,
    Subcube,
    VertexSet,
    are_adjacent,
    as_subcube,
    degree,
    flip,
    half_restrict,
    is_irreducible,
    min_degree,
    set_algebra,
    set_sensitivity,
    subcube_vertices,
)
