"""Half-open cones and polyhedra, and signed decompositions of cones.

A half-open simplicial cone keeps one flag per facet: +1 means the facet
is included (weak inequality), -1 means it is excluded (strict).  Making
boundaries half-open turns identities that hold only up to shared faces
into exact identities of indicator functions, so no inclusion-exclusion
over faces is ever needed.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .linalg import (
    adjugate_int,
    det,
    dot,
    inverse,
    lll_reduce,
    transpose,
    vec_sub,
)
from .polytope import ClosedCone, SimplicialCone, triangulate


@dataclass(frozen=True)
class HalfOpenCone:
    """A simplicial cone with per-facet openness flags.

    sigma[j] governs the facet opposite ray j (the facet with outer
    normal dual_normals[j]): +1 keeps it, -1 excludes it.  In ray
    coordinates x - apex = sum lam_j rays[j], flag +1 means lam_j >= 0
    and flag -1 means lam_j > 0.
    """

    base: SimplicialCone
    sigma: tuple

    def __post_init__(self):
        if len(self.sigma) != len(self.base.rays):
            raise ValueError("one flag per facet required")
        if any(s not in (1, -1) for s in self.sigma):
            raise ValueError("flags must be +1 or -1")

    @property
    def index(self) -> int:
        return self.base.index

    def _sign_data(self):
        data = getattr(self, "_cached_sign_data", None)
        if data is None:
            cols = transpose(self.base.rays)
            adj = adjugate_int(cols)
            dsign = 1 if det(cols) > 0 else -1
            data = (adj, dsign)
            object.__setattr__(self, "_cached_sign_data", data)
        return data

    def contains(self, x) -> bool:
        """Exact membership; integer arithmetic when apex and x are integral."""
        adj, dsign = self._sign_data()
        apex = self.base.apex
        shifted = x if all(a == 0 for a in apex) else vec_sub(x, apex)
        for row, flag in zip(adj, self.sigma):
            lam_sign = dsign * dot(row, shifted)
            if lam_sign < 0 or (lam_sign == 0 and flag < 0):
                return False
        return True


@dataclass(frozen=True)
class HalfOpenPolyhedron:
    """Finitely many rows (normal, rhs, strict): n . x <= rhs or < rhs."""

    rows: tuple  # of (tuple[int], Fraction, bool)

    @classmethod
    def from_inequalities(cls, A, b, strict=None):
        flags = strict if strict is not None else [False] * len(A)
        return cls(rows=tuple((tuple(int(x) for x in row), Fraction(rhs), bool(f))
                              for row, rhs, f in zip(A, b, flags)))

    @property
    def dim(self):
        return len(self.rows[0][0]) if self.rows else None

    def is_closed(self) -> bool:
        return all(not strict for _, _, strict in self.rows)

    def closure(self):
        return HalfOpenPolyhedron(rows=tuple((n, rhs, False) for n, rhs, _ in self.rows))

    def contains(self, x) -> bool:
        for normal, rhs, strict in self.rows:
            v = dot(normal, x)
            if v > rhs or (strict and v == rhs):
                return False
        return True

    def contains_nearby(self, x, direction) -> bool:
        """Membership of x + t * direction for all small t > 0, exactly.

        Decides by first-order comparison, no epsilon arithmetic: a tight
        row must strictly improve, a slack row always survives.
        """
        for normal, rhs, strict in self.rows:
            v = dot(normal, x)
            if v > rhs:
                return False
            if v == rhs:
                slope = dot(normal, direction)
                if slope > 0 or (slope == 0 and strict):
                    return False
        return True


@dataclass(frozen=True)
class SignedConeSum:
    """A formal integer combination of half-open cones."""

    terms: tuple  # of (eps, HalfOpenCone)

    def evaluate(self, x) -> int:
        return sum(eps for eps, cone in self.terms if cone.contains(x))

    def to_json(self):
        out = []
        for eps, cone in self.terms:
            out.append({
                "sign": str(eps),
                "apex": [str(Fraction(a)) for a in cone.base.apex],
                "rays": [[str(r) for r in ray] for ray in cone.base.rays],
                "sigma": [str(s) for s in cone.sigma],
            })
        return out


def _canonical_terms(terms):
    return tuple(sorted(terms, key=lambda t: (t[0], t[1].base.rays, t[1].sigma)))


# ---------------------------------------------------------------------------
# exactification


def exactify(pieces, y):
    """Turn closed pieces that overlap only in facets into disjoint ones.

    pieces is a list of (weight, closed HalfOpenPolyhedron).  Facet rows
    whose normal has positive scalar product with y become strict, the
    rest stay weak, so each shared facet is kept by exactly one of its
    two pieces and double counting disappears.  Raises if y lies on one
    of the facet hyperplane directions.
    """
    out = []
    for weight, poly in pieces:
        if not poly.is_closed():
            raise ValueError("pieces must be closed")
        rows = []
        for normal, rhs, _ in poly.rows:
            p = dot(normal, y)
            if p == 0:
                raise ValueError("y is not generic for these pieces")
            rows.append((normal, rhs, p > 0))
        out.append((weight, HalfOpenPolyhedron(rows=tuple(rows))))
    return out


def choose_triangulation_y(rays, facet_normals):
    """An interior direction of cone(rays) avoiding all given normals.

    Tries y = sum_i (1 + gamma^i) rays[i] for gamma = 1, 1/2, 1/4, ...
    and returns the first y with nonzero product against every normal.
    Deterministic, and terminates because each product is a nonzero
    polynomial in gamma.
    """
    gamma = Fraction(1)
    for _ in range(400):
        y = tuple(sum((1 + gamma ** (i + 1)) * ray[k] for i, ray in enumerate(rays))
                  for k in range(len(rays[0])))
        if all(dot(n, y) != 0 for n in facet_normals):
            return y
        gamma /= 2
    raise RuntimeError("no generic direction found")  # unreachable for spanning rays


def halfopen_triangulate(C: ClosedCone):
    """Partition a closed pointed cone into half-open simplicial cones.

    Triangulates, then assigns facet flags with a common interior
    direction: every point of C lies in exactly one output cone.
    """
    pieces = triangulate(C)
    if len(pieces) == 1:
        return [HalfOpenCone(base=pieces[0], sigma=(1,) * len(pieces[0].rays))]
    normals = [n for p in pieces for n in p.dual_normals]
    y = choose_triangulation_y(C.rays, normals)
    out = []
    for p in pieces:
        sigma = tuple(1 if dot(n, y) < 0 else -1 for n in p.dual_normals)
        out.append(HalfOpenCone(base=p, sigma=sigma))
    return out


# ---------------------------------------------------------------------------
# signed decomposition


def facet_strictness(sigma, alpha, l, m):
    """Openness flag of one child facet in a signed decomposition step.

    The parent has flags sigma and the new ray w has coefficients alpha
    in the parent's rays (both 1-indexed here).  Child m replaces ray m
    by w; l = 0 addresses the child's facet opposite w, any other l
    addresses the child's facet opposite parent ray l.  The flag depends
    only on the signs of the alphas, the parent flags, and the order of
    l and m, case by case:

      l = 0:                     sign(alpha_m) * sigma_m
      alpha_l = 0:               sigma_l
      alpha_l * alpha_m > 0:     sigma_l if l < m else -sigma_l   (when sigma_l == sigma_m)
                                 sigma_l                          (otherwise)
      alpha_l * alpha_m < 0:     sigma_l                          (when sigma_l == sigma_m)
                                 sigma_l if l < m else sigma_m

    Each line is the sign of an exact scalar product against a common
    reference point placed just inside the kept region, with ties broken
    by an infinitesimal that favors lower indices; the table only reads
    off those signs.
    """
    am = alpha[m - 1]
    if am == 0:
        raise ValueError("alpha_m must be nonzero")
    sm = sigma[m - 1]
    if l == 0:
        return sm if am > 0 else -sm
    al = alpha[l - 1]
    sl = sigma[l - 1]
    if al == 0:
        return sl
    if (al > 0) == (am > 0):
        if sl == sm:
            return sl if l < m else -sl
        return sl
    if sl == sm:
        return sl
    return sl if l < m else sm


def _int_root(n: int, d: int) -> int:
    """Largest r with r**d <= n."""
    r = int(round(n ** (1.0 / d)))
    while r ** d > n:
        r -= 1
    while (r + 1) ** d <= n:
        r += 1
    return r


def find_w(rays):
    """A short auxiliary ray for one signed decomposition step.

    Returns (w, alpha) with w a primitive integer vector, alpha its
    coefficients in the given rays, every nonzero |alpha_i| < 1 (so all
    children have strictly smaller index), and not all nonzero alphas
    negative.  Candidates come from an LLL-reduced basis of the
    coefficient lattice plus small combinations; if none beats norm 1,
    an exhaustive box search finishes the job (one always exists).
    Deterministic: minimal sup-norm, ties by lexicographic order.
    """
    d = len(rays)
    cols = transpose(rays)
    index = abs(det(cols))
    if index <= 1:
        raise ValueError("cone index must exceed 1")
    inv_rows = inverse(rays)  # rows form a basis of the coefficient lattice
    reduced, U = lll_reduce(inv_rows)

    def normalize(w, alpha):
        g = gcd(*(abs(x) for x in w))
        if g > 1:
            w = tuple(x // g for x in w)
            alpha = tuple(a / g for a in alpha)
        if all(a <= 0 for a in alpha):
            w = tuple(-x for x in w)
            alpha = tuple(-a for a in alpha)
        return w, alpha

    candidates = {}
    for coeffs in product((-1, 0, 1), repeat=d):
        if all(c == 0 for c in coeffs):
            continue
        w = tuple(sum(c * U[k][j] for k, c in enumerate(coeffs)) for j in range(d))
        if all(x == 0 for x in w):
            continue
        alpha = tuple(sum(c * reduced[k][j] for k, c in enumerate(coeffs))
                      for j in range(d))
        w, alpha = normalize(w, alpha)
        candidates[w] = alpha

    best = None
    for w, alpha in candidates.items():
        ninf = max(abs(a) for a in alpha)
        if ninf < 1 and (best is None or (ninf, w) < (best[0], best[1])):
            best = (ninf, w, alpha)

    if best is None:
        inv_cols = transpose(inv_rows)  # the actual inverse of the ray columns
        r = _int_root(index, d)
        bounds = [sum(abs(x) for x in row) for row in cols]
        ranges = [range(-((s + r - 1) // r), (s + r - 1) // r + 1) for s in bounds]
        for w in product(*ranges):
            if all(x == 0 for x in w):
                continue
            alpha = tuple(dot(row, w) for row in inv_cols)
            ninf = max(abs(a) for a in alpha)
            if ninf >= 1:
                continue
            w2, alpha2 = normalize(w, alpha)
            ninf = max(abs(a) for a in alpha2)
            if best is None or (ninf, w2) < (best[0], best[1]):
                best = (ninf, w2, alpha2)

    if best is None:
        raise RuntimeError("no admissible ray found")  # impossible for index > 1
    _, w, alpha = best
    return w, alpha


def decompose_step(cone: HalfOpenCone, w, alpha):
    """One level of signed decomposition: the children replacing each ray.

    Child m swaps ray m for w and inherits sign(alpha_m); children with
    alpha_m = 0 vanish.  Facet flags follow facet_strictness, so the
    signed sum of the children equals the parent exactly.
    """
    d = len(cone.base.rays)
    children = []
    for m in range(1, d + 1):
        am = alpha[m - 1]
        if am == 0:
            continue
        eps = 1 if am > 0 else -1
        child_rays = tuple(w if j == m - 1 else cone.base.rays[j] for j in range(d))
        sigma = tuple(facet_strictness(cone.sigma, alpha, 0 if j == m - 1 else j + 1, m)
                      for j in range(d))
        child = HalfOpenCone(base=SimplicialCone(apex=cone.base.apex, rays=child_rays),
                             sigma=sigma)
        children.append((eps, child))
    return children


def signed_decompose(cone: HalfOpenCone, max_index: int = 1, stats=None):
    """Decompose a half-open cone into low-index half-open cones, signed.

    Recursion stops once a cone's index is at most max_index.  The
    result is exact: for every point x, the signed count of containing
    cones equals 1 or 0 according to membership in the input cone.  When
    stats is a dict it receives max_depth and the (parent, child) index
    pairs of every split.
    """
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    terms = []
    stack = [(1, cone, 0)]
    max_depth = 0
    while stack:
        eps, current, depth = stack.pop()
        max_depth = max(max_depth, depth)
        if current.index <= max_index:
            terms.append((eps, current))
            continue
        w, alpha = find_w(current.base.rays)
        for ceps, child in decompose_step(current, w, alpha):
            if stats is not None:
                stats.setdefault("splits", []).append((current.index, child.index))
            stack.append((eps * ceps, child, depth + 1))
    if stats is not None:
        stats["max_depth"] = max(stats.get("max_depth", 0), max_depth)
        stats["num_cones"] = stats.get("num_cones", 0) + len(terms)
    return SignedConeSum(terms=_canonical_terms(terms))
