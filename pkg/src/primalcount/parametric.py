"""Parametric polytopes: vertices, chambers, and counting functions.

A family P_q = {x : A x <= E q + f} over parameters q has finitely many
parametric vertices, each an affine map v(q) = M q + c valid on its
activity region in q-space.  The regions overlap only in walls; cutting
the parameter space along all activity boundaries yields chambers on
which the vertex set is constant.  Making chambers and activity regions
half-open with one shared generic direction gives every parameter point
exactly one evaluation formula, including points on the walls.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .errors import (
    DegenerateConeError,
    NotFullDimensionalError,
    SingularMatrixError,
    UnboundedError,
)
from .genfun import GenFun, gf_term, specialize_at_one
from .halfopen import HalfOpenPolyhedron, halfopen_triangulate, signed_decompose
from .linalg import dot, inverse
from .lp import (
    OPTIMAL,
    interior_point,
    lp_feasible,
    lp_maximize,
    recession_ray,
    remove_redundant,
)
from .polytope import ClosedCone, extreme_rays


class ParametricPolytope:
    """The family {x : A x <= E q + f} with q restricted to a closed set Q."""

    def __init__(self, A, E, f, qset=None):
        self.A = tuple(tuple(int(v) for v in row) for row in A)
        self.E = tuple(tuple(int(v) for v in row) for row in E)
        self.f = tuple(Fraction(v) for v in f)
        if not self.A:
            raise ValueError("constraint matrix must have at least one row")
        if len(self.A) != len(self.E) or len(self.A) != len(self.f):
            raise ValueError("A, E, f must have matching row counts")
        self.dim = len(self.A[0])
        self.qdim = len(self.E[0])
        if self.dim < 1 or self.qdim < 1:
            raise ValueError("dimension must be positive")
        if any(len(r) != self.dim for r in self.A):
            raise ValueError("ragged constraint matrix")
        if any(len(r) != self.qdim for r in self.E):
            raise ValueError("ragged parameter matrix")
        if qset is None:
            qset = HalfOpenPolyhedron(rows=())
        if not qset.is_closed():
            raise ValueError("parameter set must be closed")
        if qset.rows and len(qset.rows[0][0]) != self.qdim:
            raise ValueError("parameter set dimension mismatch")
        self.qset = qset
        self._analyses = {}

    def analysis(self, max_index=1):
        if max_index not in self._analyses:
            self._analyses[max_index] = ParametricAnalysis(self, max_index)
        return self._analyses[max_index]


@dataclass(frozen=True)
class ParametricVertex:
    """One vertex map v(q) = M q + c with its validity region and cone."""

    basis: tuple
    map_M: tuple  # d x p Fractions
    map_c: tuple  # d Fractions
    activity: HalfOpenPolyhedron  # closed region in q-space
    cone: ClosedCone  # recession structure at the vertex; None when degenerate

    def value(self, q):
        return tuple(dot(row, q) + c for row, c in zip(self.map_M, self.map_c))


@dataclass(frozen=True)
class Chamber:
    region: HalfOpenPolyhedron  # closed
    active: tuple  # of ParametricVertex
    sample: tuple  # interior point


@dataclass(frozen=True)
class HalfOpenChamber:
    region: HalfOpenPolyhedron
    active: tuple  # of ParametricVertex
    sample: tuple


def _integer_row(g, h):
    """Scale a rational inequality g . q <= h to a primitive integer normal."""
    denoms = [Fraction(x).denominator for x in g]
    scale = lcm(*denoms) if denoms else 1
    gi = [int(Fraction(x) * scale) for x in g]
    common = gcd(*(abs(v) for v in gi)) if any(gi) else 1
    if common > 1:
        gi = [v // common for v in gi]
        scale = Fraction(scale, common)
    return tuple(gi), Fraction(h) * scale


def enumerate_parametric_vertices(pp: ParametricPolytope):
    """All distinct vertex maps of the family, with activity regions.

    Walks every full-rank d-subset of rows, solves for the basic
    solution as an affine map of q, deduplicates identical maps, keeps
    maps feasible somewhere in Q, and attaches the q-independent cone
    spanned by the rows that are tight identically in q.  Raises
    UnboundedError when the family has a recession direction, and
    NotFullDimensionalError when some vertex map forces the polytope
    into a hyperplane on a full-dimensional part of Q.
    """
    d, p = pp.dim, pp.qdim
    if recession_ray(pp.A) is not None:
        raise UnboundedError("polyhedron unbounded")
    seen = {}
    order = []
    for basis in combinations(range(len(pp.A)), d):
        sub = [pp.A[i] for i in basis]
        try:
            inv = inverse(sub)
        except SingularMatrixError:
            continue
        Esub = [pp.E[i] for i in basis]
        fsub = [pp.f[i] for i in basis]
        M = tuple(tuple(sum(inv[r][k] * Esub[k][j] for k in range(d))
                        for j in range(p)) for r in range(d))
        c = tuple(sum(inv[r][k] * fsub[k] for k in range(d)) for r in range(d))
        key = (M, c)
        if key in seen:
            continue
        seen[key] = basis
        order.append(key)

    vertices = []
    for key in sorted(order):
        M, c = key
        basis = seen[key]
        rows = []
        tight = []
        feasible = True
        for i, (arow, erow, fi) in enumerate(zip(pp.A, pp.E, pp.f)):
            # A_i (M q + c) <= E_i q + f_i as a row in q
            gq = tuple(dot(arow, [M[r][j] for r in range(d)]) - erow[j]
                       for j in range(p))
            rhs = fi - dot(arow, c)
            if all(x == 0 for x in gq):
                if rhs == 0:
                    tight.append(i)
                elif rhs < 0:
                    feasible = False
                    break
                continue
            rows.append(_integer_row(gq, rhs))
        if not feasible:
            continue
        all_rows = [(g, h, False) for g, h in rows] + list(pp.qset.rows)
        A_act = [g for g, h, _ in all_rows]
        b_act = [h for _, h, _ in all_rows]
        if all_rows and not lp_feasible(A_act, b_act):
            continue
        if all_rows:
            A_red, b_red = remove_redundant(A_act, b_act)
            activity = HalfOpenPolyhedron.from_inequalities(A_red, b_red)
        else:
            activity = HalfOpenPolyhedron(rows=())
        normals = [pp.A[i] for i in tight]
        try:
            rays = extreme_rays(normals)
            cone = ClosedCone(apex=(Fraction(0),) * d, rays=tuple(rays),
                              normals=tuple(normals))
        except DegenerateConeError:
            if not all_rows or interior_point(A_act, b_act) is not None:
                raise NotFullDimensionalError(
                    "polyhedron not full-dimensional over a parameter region")
            cone = None
        vertices.append(ParametricVertex(basis=tuple(basis), map_M=M, map_c=c,
                                         activity=activity, cone=cone))
    return vertices


def chambers_max_dim(vertices, qset=None, qdim=None):
    """Maximal-dimension chambers: cells of the activity-boundary arrangement.

    Splits Q along every activity facet hyperplane, keeps the cells that
    are full-dimensional, reads off the set of vertices active on each
    cell interior, and drops cells where no vertex is active (the
    polytope is empty there).  Chambers meet only in their boundaries.
    """
    if qset is None:
        qset = HalfOpenPolyhedron(rows=())
    if qset.rows:
        qdim = len(qset.rows[0][0])
    elif qdim is None:
        if not vertices:
            return []
        qdim = len(next(iter(vertices)).map_M[0]) if vertices[0].map_M else 1

    hyperplanes = set()
    for v in vertices:
        for g, h, _ in v.activity.rows:
            lead = next((x for x in g if x != 0), 0)
            if lead < 0:
                hyperplanes.add((tuple(-x for x in g), -h))
            else:
                hyperplanes.add((g, h))
    hyperplanes = sorted(hyperplanes)

    base = [(g, h) for g, h, _ in qset.rows]
    if base:
        if interior_point([g for g, _ in base], [h for _, h in base]) is None:
            return []
    cells = [base]
    for g, h in hyperplanes:
        next_cells = []
        for cell in cells:
            low = cell + [(g, h)]
            high = cell + [(tuple(-x for x in g), -h)]
            low_ok = interior_point([r[0] for r in low], [r[1] for r in low],
                                    ) is not None
            high_ok = interior_point([r[0] for r in high], [r[1] for r in high],
                                     ) is not None
            if low_ok and high_ok:
                next_cells.append(low)
                next_cells.append(high)
            else:
                next_cells.append(cell)
        cells = next_cells

    chambers = []
    for cell in cells:
        if cell:
            A = [g for g, _ in cell]
            b = [h for _, h in cell]
            sample = interior_point(A, b)
            if sample is None:
                continue
            A, b = remove_redundant(A, b)
            region = HalfOpenPolyhedron.from_inequalities(A, b)
        else:
            sample = (Fraction(0),) * qdim
            region = HalfOpenPolyhedron(rows=())
        active = tuple(v for v in vertices if v.activity.contains(sample))
        if not active:
            continue
        chambers.append(Chamber(region=region, active=active, sample=sample))
    chambers.sort(key=lambda ch: ch.region.rows)
    return chambers


def _facet_relint_point(rows, idx):
    """A point in the relative interior of facet idx of a full-dim region."""
    g, h, _ = rows[idx]
    p = len(g)
    # variables (q, t): maximize t with g.q = h, other rows slack >= t, t <= 1
    A, b, c = [], [], [Fraction(0)] * p + [Fraction(1)]
    A.append(tuple(list(g) + [0]))
    b.append(h)
    A.append(tuple([-x for x in g] + [0]))
    b.append(-h)
    for j, (g2, h2, _) in enumerate(rows):
        if j == idx:
            continue
        A.append(tuple(list(g2) + [1]))
        b.append(h2)
    A.append(tuple([0] * p + [1]))
    b.append(Fraction(1))
    status, value, point = lp_maximize(c, A, b)
    if status != OPTIMAL or value <= 0:
        return None
    return tuple(point[:p])


def _is_wall(row, q_f, chambers):
    """Whether crossing this facet from q_f leads into some chamber."""
    g = row[0]
    return any(ch.region.contains_nearby(q_f, g) for ch in chambers)


def choose_parameter_direction(seed, normals):
    """A direction generic against every given normal, found by perturbing."""
    if all(dot(g, seed) != 0 for g in normals):
        return tuple(seed)
    p = len(seed)
    gamma = Fraction(1)
    for _ in range(400):
        y = tuple(s + gamma ** (i + 1) for i, s in enumerate(seed))
        if all(dot(g, y) != 0 for g in normals):
            return y
        gamma /= 2
    raise RuntimeError("no generic direction found")  # unreachable


def _halfopen_region(region, y_q, chambers, frontier_closed=True):
    """Open the region's wall facets against y_q; keep outer facets closed.

    A facet is a wall when a chamber lies directly beyond it; walls with
    normal pairing positively against y_q become strict, so each wall
    point stays in exactly one of the adjacent regions.  For regions
    without full dimension (frontier_closed=False callers: none today)
    every row follows the sign rule, which empties such regions.
    """
    rows = region.rows
    if not rows:
        return region
    full_dim = interior_point([g for g, h, _ in rows],
                              [h for _, h, _ in rows]) is not None
    out = []
    for idx, (g, h, _) in enumerate(rows):
        strict = False
        pairing = dot(g, y_q)
        if not full_dim:
            strict = pairing > 0
        elif pairing > 0:
            q_f = _facet_relint_point(rows, idx)
            strict = q_f is not None and _is_wall((g, h), q_f, chambers)
        out.append((g, h, strict))
    return HalfOpenPolyhedron(rows=tuple(out))


def halfopen_chambers(chambers, y_q=None):
    """Half-open chambers that partition the union of the closed chambers.

    Every parameter point in any chamber closure lands in exactly one
    half-open chamber.  y_q must not be orthogonal to any wall normal;
    it is repaired by perturbation when it is.
    """
    if not chambers:
        return []
    normals = [g for ch in chambers for g, h, _ in ch.region.rows]
    seed = y_q if y_q is not None else chambers[0].sample
    y_q = choose_parameter_direction(seed, normals)
    out = []
    for ch in chambers:
        region = _halfopen_region(ch.region, y_q, chambers)
        out.append(HalfOpenChamber(region=region, active=ch.active,
                                   sample=ch.sample))
    return out


def halfopen_activity_regions(vertices, chambers, y_q=None):
    """Half-open activity regions consistent with the half-open chambers.

    Under the same direction y_q, a parameter point q lies in the
    half-open activity region of exactly the vertices active on the
    half-open chamber containing q.  Returns (vertex, region) pairs.
    """
    if not vertices:
        return []
    if not chambers:
        # No full-dimensional chamber: nothing may be kept anywhere.
        p = len(vertices[0].map_M[0])
        never = HalfOpenPolyhedron(rows=(((0,) * p, Fraction(-1), False),))
        return [(v, never) for v in vertices]
    normals = [g for ch in chambers for g, h, _ in ch.region.rows]
    normals += [g for v in vertices for g, h, _ in v.activity.rows]
    seed = y_q if y_q is not None else chambers[0].sample
    y_q = choose_parameter_direction(seed, normals)
    return [(v, _halfopen_region(v.activity, y_q, chambers)) for v in vertices]


class ParametricAnalysis:
    """Precomputed chambers, half-open regions, and cone decompositions."""

    def __init__(self, pp: ParametricPolytope, max_index: int = 1):
        self.pp = pp
        self.max_index = max_index
        self.stats = {}
        self.vertices = enumerate_parametric_vertices(pp)
        self.chambers = chambers_max_dim(self.vertices, pp.qset, qdim=pp.qdim)
        wall_normals = [g for ch in self.chambers for g, h, _ in ch.region.rows]
        act_normals = [g for v in self.vertices for g, h, _ in v.activity.rows]
        if self.chambers:
            self.y_q = choose_parameter_direction(self.chambers[0].sample,
                                                  wall_normals + act_normals)
        else:
            self.y_q = None
        self.open_chambers = halfopen_chambers(self.chambers, self.y_q)
        self.open_activities = halfopen_activity_regions(self.vertices,
                                                         self.chambers, self.y_q)
        self._decomps = {}

    def _decomposition(self, vertex: ParametricVertex):
        """Signed half-open unimodular pieces of the vertex cone, at apex 0."""
        if vertex not in self._decomps:
            terms = []
            for piece in halfopen_triangulate(vertex.cone):
                result = signed_decompose(piece, max_index=self.max_index,
                                          stats=self.stats)
                terms.extend(result.terms)
            self._decomps[vertex] = tuple(terms)
        return self._decomps[vertex]

    def _active_at(self, q0, via):
        if via == "chambers":
            hits = [ch for ch in self.open_chambers if ch.region.contains(q0)]
            if not hits:
                return None
            return hits[0].active
        if via == "activities":
            active = tuple(v for v, region in self.open_activities
                           if region.contains(q0))
            return active or None
        raise ValueError(f"unknown evaluation mode: {via}")

    def count_at(self, q0, via="chambers", stats=None):
        q0 = tuple(Fraction(x) for x in q0)
        if len(q0) != self.pp.qdim:
            raise ValueError("parameter dimension mismatch")
        if not self.pp.qset.contains(q0):
            if stats is not None:
                stats["outside"] = True
            return 0
        active = self._active_at(q0, via)
        if active is None:
            if stats is not None:
                stats["outside"] = True
            return 0
        terms = []
        for v in active:
            apex = v.value(q0)
            for eps, leaf in self._decomposition(v):
                terms.append(gf_term(leaf, apex, sign=eps))
        if stats is not None:
            stats["num_vertices"] = len(active)
            stats["num_cones"] = len(terms)
            stats.update({k: self.stats[k] for k in ("max_depth",)
                          if k in self.stats})
        return specialize_at_one(GenFun(terms=tuple(terms)))


def evaluate_count(pp: ParametricPolytope, q0, max_index: int = 1,
                   stats=None, via="chambers") -> int:
    """Exact |P_q0 intersect Z^d| for one parameter value.

    Returns 0 when q0 lies outside Q or outside every chamber (the
    polytope is empty there); stats["outside"] reports that case.
    """
    return pp.analysis(max_index).count_at(q0, via=via, stats=stats)
