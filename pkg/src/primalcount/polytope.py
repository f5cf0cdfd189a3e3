"""Polytopes in inequality form and the cones at their vertices."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

from . import lp
from .errors import (
    DegenerateConeError,
    NotFullDimensionalError,
    SingularMatrixError,
    UnboundedError,
)
from .linalg import (
    det,
    dot,
    inverse,
    is_zero_vec,
    rank,
    solve,
    transpose,
    vec_primitive,
    vec_sub,
)


@dataclass(frozen=True)
class HPolytope:
    """The set {x : A x <= b} with integer A and b.

    Rational input rows are scaled row-by-row to integers, exactly.
    Rows are validated to be rectangular, nonzero and at least
    1-dimensional; boundedness is a property of the data and is checked
    by the operations that need it, not by the constructor.
    """

    A: tuple
    b: tuple

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise ValueError("row count mismatch between A and b")
        rows, rhs = [], []
        for row, bi in zip(self.A, self.b):
            entries = [Fraction(x) for x in row] + [Fraction(bi)]
            scale = lcm(*(e.denominator for e in entries))
            ints = [int(e * scale) for e in entries]
            rows.append(tuple(ints[:-1]))
            rhs.append(ints[-1])
        A, b = tuple(rows), tuple(rhs)
        if A:
            d = len(A[0])
            if d < 1:
                raise ValueError("dimension must be positive")
            if any(len(row) != d for row in A):
                raise ValueError("ragged constraint matrix")
            if any(is_zero_vec(row) for row in A):
                raise ValueError("zero row in constraint matrix")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return len(self.A[0]) if self.A else 0

    @property
    def nrows(self) -> int:
        return len(self.A)

    def contains(self, x) -> bool:
        return all(dot(row, x) <= rhs for row, rhs in zip(self.A, self.b))


@dataclass(frozen=True)
class Vertex:
    point: tuple          # Fractions
    tight: frozenset      # indices of all rows active at the point


@dataclass(frozen=True)
class ClosedCone:
    """A pointed full-dimensional cone, rays plus valid outer normals.

    Every normal n satisfies n . (x - apex) <= 0 on the cone, and the
    normals cut out the cone exactly; redundant normals are permitted.
    """

    apex: tuple
    rays: tuple           # primitive integer vectors, sorted
    normals: tuple        # integer outer normals

    def contains(self, x) -> bool:
        shifted = vec_sub(x, self.apex)
        return all(dot(n, shifted) <= 0 for n in self.normals)


@dataclass(frozen=True)
class SimplicialCone:
    """A full-dimensional cone on exactly d linearly independent rays.

    dual_normals[j] is the rational outer normal of the facet opposite
    ray j, normalized so that dual_normals[j] . rays[i] == -delta_ij.
    """

    apex: tuple
    rays: tuple
    dual_normals: tuple = field(default=None)

    def __post_init__(self):
        d = len(self.rays)
        if d == 0 or any(len(r) != d for r in self.rays):
            raise DegenerateConeError("need d rays of dimension d")
        if self.dual_normals is None:
            cols = transpose(self.rays)
            try:
                inv = inverse(cols)
            except SingularMatrixError:
                raise DegenerateConeError("rays are linearly dependent") from None
            duals = tuple(tuple(-x for x in row) for row in inv)
            object.__setattr__(self, "dual_normals", duals)

    @property
    def index(self) -> int:
        """Absolute determinant of the ray matrix: 1 means unimodular."""
        return abs(det(transpose(self.rays)))

    def coefficients(self, x):
        """Coefficients lam with x - apex == sum lam_j rays[j]."""
        shifted = vec_sub(x, self.apex)
        return tuple(-dot(n, shifted) for n in self.dual_normals)


def _require_nonempty_full_dim_bounded(P: HPolytope):
    if P.nrows == 0:
        raise UnboundedError("polyhedron unbounded")
    if not lp.lp_feasible(P.A, P.b):
        return False
    if lp.interior_point(P.A, P.b) is None:
        raise NotFullDimensionalError("polyhedron not full-dimensional")
    if lp.recession_ray(P.A) is not None:
        raise UnboundedError("polyhedron unbounded")
    return True


def enumerate_vertices(P: HPolytope):
    """All vertices of a bounded full-dimensional polytope, sorted.

    Every d-subset of rows with invertible submatrix contributes its
    basic solution when feasible; coincident solutions merge and each
    vertex records the full set of rows tight at it.  Returns [] for an
    empty polytope and raises for unbounded or lower-dimensional input.
    """
    if not _require_nonempty_full_dim_bounded(P):
        return []
    d = P.dim
    points = {}
    for subset in combinations(range(P.nrows), d):
        M = [P.A[i] for i in subset]
        try:
            x = solve(M, [P.b[i] for i in subset])
        except SingularMatrixError:
            continue
        if P.contains(x):
            points[x] = None
    vertices = []
    for x in sorted(points):
        tight = frozenset(i for i in range(P.nrows)
                          if dot(P.A[i], x) == P.b[i])
        vertices.append(Vertex(point=x, tight=tight))
    return vertices


def extreme_rays(normals):
    """Extreme rays of the pointed cone {x : n . x <= 0 for n in normals}.

    Incremental double description: start from a simplicial subcone
    given by d independent normals, then cut with the remaining ones.
    Rays come back primitive and sorted.  Raises if the cone is not
    pointed or the normals do not span.
    """
    normals = [tuple(n) for n in normals]
    d = len(normals[0])
    base = None
    for subset in combinations(range(len(normals)), d):
        M = [normals[i] for i in subset]
        if det(M) != 0:
            base = subset
            break
    if base is None:
        raise DegenerateConeError("cone is not pointed")
    M = [normals[i] for i in base]
    inv = inverse(M)
    rays = [vec_primitive(tuple(-row[j] for row in inv)) for j in range(d)]
    processed = [normals[i] for i in base]

    for i in range(len(normals)):
        if i in base:
            continue
        n = normals[i]
        vals = [dot(n, r) for r in rays]
        keep = [r for r, v in zip(rays, vals) if v <= 0]
        new = []
        for (r1, v1), (r2, v2) in combinations(zip(rays, vals), 2):
            if v1 * v2 >= 0:
                continue
            tight_both = [m for m in processed
                          if dot(m, r1) == 0 and dot(m, r2) == 0]
            if rank(tight_both) != d - 2:
                continue
            if v1 < 0:
                (r1, v1), (r2, v2) = (r2, v2), (r1, v1)
            new.append(vec_primitive(tuple(v1 * b - v2 * a
                                           for a, b in zip(r1, r2))))
        processed.append(n)
        rays = keep + [r for r in new if r not in keep]

    rays = sorted(set(rays))
    if rank(rays) != d:
        raise DegenerateConeError("cone is not full-dimensional")
    return rays


def vertex_cone(P: HPolytope, v: Vertex) -> ClosedCone:
    """The cone of feasible directions at a vertex, shifted to its apex."""
    normals = [P.A[i] for i in sorted(v.tight)]
    rays = extreme_rays(normals)
    return ClosedCone(apex=tuple(Fraction(x) for x in v.point),
                      rays=tuple(rays), normals=tuple(normals))


def _facet_normal(rays_subset, opposite):
    """Outer normal of span(rays_subset), oriented away from `opposite`."""
    M = list(rays_subset) + [opposite]
    try:
        inv = inverse(M)
    except SingularMatrixError:
        return None
    n = tuple(-row[-1] for row in inv)  # n . subset = 0, n . opposite = -1
    return vec_primitive(n)


def _boundary_facets(simplices, rays):
    """Boundary (d-1)-faces of a triangulated convex cone with normals.

    A face of some simplex lies on the boundary exactly when it belongs
    to a single simplex of the complex.
    """
    counts = {}
    owner = {}
    for simplex in simplices:
        for drop in simplex:
            face = tuple(i for i in simplex if i != drop)
            counts[face] = counts.get(face, 0) + 1
            owner[face] = drop
    facets = []
    for face, cnt in counts.items():
        if cnt == 1:
            n = _facet_normal([rays[i] for i in face], rays[owner[face]])
            facets.append((face, n))
    return facets


def triangulate(C: ClosedCone):
    """Split a pointed full-dimensional cone into simplicial cones.

    Placing order: rays are inserted as given (ClosedCone keeps them
    sorted), each new ray joined to the boundary faces it sees.  Pieces
    share facets exactly, cover C, and use only C's own rays.
    """
    rays = list(C.rays)
    d = len(rays[0])
    if rank(rays) != d:
        raise DegenerateConeError("cone is not full-dimensional")

    start = None
    for subset in combinations(range(len(rays)), d):
        if det([rays[i] for i in subset]) != 0:
            start = subset
            break
    simplices = [tuple(start)]
    for t in range(len(rays)):
        if t in start:
            continue
        new = []
        for face, n in _boundary_facets(simplices, rays):
            if dot(n, rays[t]) > 0:
                new.append(tuple(sorted(face + (t,))))
        simplices.extend(new)

    return [SimplicialCone(apex=C.apex, rays=tuple(rays[i] for i in simplex))
            for simplex in sorted(simplices)]
