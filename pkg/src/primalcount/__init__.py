"""Exact lattice-point counting for rational polytopes.

Counts integer points of polytopes given by inequalities, and evaluates
piecewise counting functions of polytopes whose right-hand sides depend
affinely on integer parameters.  All arithmetic is exact.
"""

from .errors import (
    DegenerateConeError,
    EmptyPolyhedronError,
    NotFullDimensionalError,
    OracleTooLargeError,
    ParseError,
    SingularMatrixError,
    UnboundedError,
)
from .genfun import (
    GenFun,
    GenFunTerm,
    count_polytope,
    gf_term,
    parallelepiped_points,
    specialize_at_one,
)
from .halfopen import (
    HalfOpenCone,
    HalfOpenPolyhedron,
    SignedConeSum,
    exactify,
    facet_strictness,
    find_w,
    halfopen_triangulate,
    signed_decompose,
)
from .oracle import brute_count, member
from .parametric import (
    Chamber,
    HalfOpenChamber,
    ParametricPolytope,
    ParametricVertex,
    chambers_max_dim,
    enumerate_parametric_vertices,
    evaluate_count,
    halfopen_activity_regions,
    halfopen_chambers,
)
from .polytope import (
    ClosedCone,
    HPolytope,
    SimplicialCone,
    Vertex,
    enumerate_vertices,
    triangulate,
    vertex_cone,
)

__all__ = [
    "Chamber",
    "ClosedCone",
    "DegenerateConeError",
    "EmptyPolyhedronError",
    "GenFun",
    "GenFunTerm",
    "HPolytope",
    "HalfOpenChamber",
    "HalfOpenCone",
    "HalfOpenPolyhedron",
    "NotFullDimensionalError",
    "OracleTooLargeError",
    "ParametricPolytope",
    "ParametricVertex",
    "ParseError",
    "SignedConeSum",
    "SimplicialCone",
    "SingularMatrixError",
    "UnboundedError",
    "Vertex",
    "brute_count",
    "chambers_max_dim",
    "count_polytope",
    "enumerate_parametric_vertices",
    "enumerate_vertices",
    "evaluate_count",
    "exactify",
    "facet_strictness",
    "find_w",
    "gf_term",
    "halfopen_activity_regions",
    "halfopen_chambers",
    "halfopen_triangulate",
    "member",
    "parallelepiped_points",
    "signed_decompose",
    "specialize_at_one",
    "triangulate",
    "vertex_cone",
]
