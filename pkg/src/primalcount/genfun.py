"""Rational generating functions of half-open simplicial cones.

Each cone contributes a term: the lattice points of its fundamental
parallelepiped as numerator exponents over the product of (1 - z^ray)
denominators.  Lattice point counts come out by specializing the sum of
all terms at z = 1, which every single term has as a pole: substituting
z = t^mu for a direction mu that kills no denominator, then t = 1 + u,
turns the specialization into reading one coefficient of an exact
truncated power series.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor

from .halfopen import HalfOpenCone, halfopen_triangulate, signed_decompose
from .linalg import dot, smith_normal_form, transpose
from .polytope import HPolytope, enumerate_vertices, vertex_cone


@dataclass(frozen=True)
class GenFunTerm:
    sign: int
    numerator_exponents: tuple  # of integer vectors
    denominator_rays: tuple  # of d integer vectors

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class GenFun:
    terms: tuple

    def to_json(self):
        return {
            "terms": [
                {
                    "sign": str(t.sign),
                    "numerator": [[str(e) for e in p] for p in t.numerator_exponents],
                    "denominator": [[str(b) for b in ray] for ray in t.denominator_rays],
                }
                for t in self.terms
            ]
        }


def parallelepiped_points(cone: HalfOpenCone, apex):
    """Lattice points of the half-open fundamental parallelepiped at apex.

    The parallelepiped consists of apex + sum lambda_j rays[j] with
    lambda_j in [0,1) on closed facets and (0,1] on strict ones.  A
    Smith decomposition of the ray matrix walks one representative per
    residue class, then each representative is translated into the box
    by rounding its coordinates.  Returns exactly index many points.
    """
    rays = cone.base.rays
    d = len(rays)
    cols = transpose(rays)
    snf = smith_normal_form(cols)
    duals = cone.base.dual_normals
    # mu_j(k) = <dual_j, apex - W k> as an affine function of k
    base_mu = [dot(n, apex) for n in duals]
    wcols = transpose(snf.W)  # wcols[i] is the i-th column of W
    shift = [[dot(n, w) for w in wcols] for n in duals]
    points = []
    for k in product(*(range(s) for s in snf.s)):
        xs = [sum(k_i * w[t] for k_i, w in zip(k, wcols)) for t in range(d)]
        x = list(xs)
        for j in range(d):
            mu = base_mu[j] - sum(k_i * s for k_i, s in zip(k, shift[j]))
            n_j = -floor(mu) if cone.sigma[j] > 0 else 1 - ceil(mu)
            if n_j:
                for t in range(d):
                    x[t] += n_j * rays[j][t]
        points.append(tuple(int(v) for v in x))
    return points


def gf_term(cone: HalfOpenCone, apex, sign: int = 1) -> GenFunTerm:
    """The generating-function term of one half-open simplicial cone."""
    return GenFunTerm(sign=sign,
                      numerator_exponents=tuple(parallelepiped_points(cone, apex)),
                      denominator_rays=tuple(cone.base.rays))


def generic_directions(rays, count=1):
    """Integer directions mu = (1, M, M^2, ...) with <mu, b> != 0 for all b.

    Each pairing is a nonzero polynomial in M, so increasing M skips
    only finitely many values; yields the first `count` that work.
    """
    if not rays:
        yield from ((1,) for _ in range(count))
        return
    d = len(next(iter(rays)))
    found = 0
    M = 1
    while found < count:
        mu = tuple(M ** i for i in range(d))
        if all(dot(mu, b) != 0 for b in rays):
            found += 1
            yield mu
        M += 1
        if M > 10 ** 6:
            raise RuntimeError("no generic direction found")  # unreachable


def _binomials(N, order):
    """[C(N, k) for k = 0..order] for any integer N, exactly."""
    out = [1]
    c = 1
    for k in range(1, order + 1):
        c = c * (N - k + 1) // k
        out.append(c)
    return out


def _poly_mul_trunc(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > order:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def _series_div_trunc(num, den, order):
    assert den[0] != 0
    q = [Fraction(0)] * (order + 1)
    inv0 = Fraction(1) / Fraction(den[0])
    for k in range(order + 1):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * q[k - i]
        q[k] = acc * inv0
    return q


def specialize_at_one(g: GenFun, direction=None) -> int:
    """Exact number of lattice points of the set generating g.

    Substitutes z = t^mu for a direction mu not orthogonal to any
    denominator ray, flips factors with negative exponent via
    1/(1 - t^(-a)) = -t^a / (1 - t^a), sets t = 1 + u, and extracts the
    constant term of each Laurent expansion by one truncated series
    division.  The per-term rationals always sum to an integer.
    """
    if not g.terms:
        return 0
    d = len(g.terms[0].denominator_rays)
    all_rays = {ray for t in g.terms for ray in t.denominator_rays}
    if direction is None:
        direction = next(generic_directions(all_rays))
    else:
        direction = tuple(direction)
        if any(dot(direction, b) == 0 for b in all_rays):
            raise ValueError("direction is orthogonal to a denominator ray")

    total = Fraction(0)
    for term in g.terms:
        exps = [dot(direction, b) for b in term.denominator_rays]
        shift = sum(-e for e in exps if e < 0)
        nneg = sum(1 for e in exps if e < 0)
        sgn = term.sign * (-1 if (nneg + d) % 2 else 1)
        num = [Fraction(0)] * (d + 1)
        for p in term.numerator_exponents:
            for k, c in enumerate(_binomials(dot(direction, p) + shift, d)):
                num[k] += c
        H = [Fraction(1)]
        for e in exps:
            a = abs(e)
            # 1 - (1+u)^a = -u * (C(a,1) + C(a,2) u + ...)
            h = [Fraction(c) for c in _binomials(a, d + 1)[1:]]
            H = _poly_mul_trunc(H, h, d)
        q = _series_div_trunc(num, H, d)
        total += sgn * q[d]
    assert total.denominator == 1, "specialization must produce an integer"
    return int(total)


def count_polytope(P: HPolytope, max_index: int = 1, stats=None) -> int:
    """Number of integer points in a bounded polytope, exactly.

    Sums the generating functions of all vertex cones: triangulates
    each into half-open pieces, signed-decomposes every piece down to
    index at most max_index, enumerates the leaf parallelepipeds, and
    specializes the total at z = 1.
    """
    vertices = enumerate_vertices(P)
    if not vertices:
        return 0
    if stats is not None:
        stats["num_vertices"] = len(vertices)
    terms = []
    for v in vertices:
        C = vertex_cone(P, v)
        for piece in halfopen_triangulate(C):
            result = signed_decompose(piece, max_index=max_index, stats=stats)
            for eps, leaf in result.terms:
                terms.append(gf_term(leaf, v.point, sign=eps))
    return specialize_at_one(GenFun(terms=tuple(terms)))
