"""Newton polyhedra of monomial ideals and toric weights.

A singularity ``u = log|F|`` (monomial generators) or
``u = max_i <a_i, log|z|>`` (weight rows) is carried by
``Gamma = conv(a_i) + R^n_>=0``.  Every invariant in this package depends on
``Gamma`` only, so polyhedra are stored by their vertex set ("apexes"),
reduced eagerly at construction.

All coordinates are ``Fraction``; floats never enter.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import factorial, lcm

from . import lp
from ._facets import _det as _int_det, compact_facets, normal_vector

MAX_EXACT_DIM = 4


class InputError(ValueError):
    """Malformed singularity data (bad dimension, zero generator, ...)."""


class UnsupportedDimension(ValueError):
    """Exact covolume requested for n > 4."""


class Kind(str, Enum):
    IDEAL = "ideal"
    WEIGHT = "weight"


def as_vector(coords, n=None):
    """Coerce ``coords`` into an exponent vector (tuple of nonnegative Fractions)."""
    try:
        vec = tuple(Fraction(c) for c in coords)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational vector: {coords!r}") from exc
    if n is not None and len(vec) != n:
        raise InputError(f"expected {n} coordinates, got {len(vec)}")
    if any(c < 0 for c in vec):
        raise InputError(f"negative coordinate in {coords!r}")
    return vec


@dataclass(frozen=True)
class SingularityInput:
    n: int
    generators: tuple
    kind: Kind = Kind.IDEAL
    label: str | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"ambient dimension must be a positive integer, got {self.n!r}")
        try:
            kind = Kind(self.kind)
        except ValueError as exc:
            raise InputError(f"unknown kind {self.kind!r}") from exc
        gens = tuple(as_vector(g, self.n) for g in self.generators)
        if not gens:
            raise InputError("at least one generator is required")
        for g in gens:
            if not any(g):
                raise InputError("zero generator: u is bounded, there is no singularity")
            if kind is Kind.IDEAL and any(c.denominator != 1 for c in g):
                raise InputError(f"ideal generators must be integral, got {g}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "generators", gens)

    @property
    def denominator(self):
        return lcm(*(c.denominator for g in self.generators for c in g))

    def cleared(self):
        """Integer generators ``d * a_i`` and the common denominator ``d``."""
        d = self.denominator
        return [tuple(int(c * d) for c in g) for g in self.generators], d

    def scaled(self, t):
        """The singularity ``t * u``; integral scalings of ideals stay ideals."""
        t = Fraction(t)
        if t <= 0:
            raise InputError("scaling factor must be positive")
        gens = [tuple(c * t for c in g) for g in self.generators]
        kind = self.kind
        if any(c.denominator != 1 for g in gens for c in g):
            kind = Kind.WEIGHT
        return SingularityInput(self.n, tuple(gens), kind, self.label)


def dominates(x, y):
    return all(a >= b for a, b in zip(x, y))


def _minimal_elements(points):
    pts = sorted(set(points))
    keep = []
    for p in pts:
        if not any(dominates(p, q) for q in keep):
            keep.append(p)
    return keep


def _in_hull_plus_orthant(apexes, x):
    """Exact LP: lambda >= 0, sum lambda = 1, sum lambda_i a_i <= x."""
    if any(dominates(x, a) for a in apexes):
        return True
    n = len(x)
    m = len(apexes)
    A = []
    for j in range(n):
        A.append([a[j] for a in apexes] + [1 if k == j else 0 for k in range(n)])
    A.append([1] * m + [0] * n)
    return lp.feasible(A, list(x) + [1])


def reduce_apexes(points):
    """Vertex set of conv(points) + orthant (order-independent, idempotent)."""
    pts = _minimal_elements(points)
    n = len(pts[0])
    # a unique minimiser of some coordinate is always a vertex
    sure = set()
    for j in range(n):
        low = min(p[j] for p in pts)
        hits = [p for p in pts if p[j] == low]
        if len(hits) == 1:
            sure.add(hits[0])
    keep = list(pts)
    for p in pts:
        if p in sure or len(keep) == 1:
            continue
        others = [q for q in keep if q != p]
        if _in_hull_plus_orthant(others, p):
            keep = others
    return tuple(sorted(keep))


@dataclass(frozen=True)
class NewtonPolyhedron:
    n: int
    apexes: tuple

    @classmethod
    def from_points(cls, n, points):
        vecs = [as_vector(p, n) for p in points]
        if not vecs:
            raise InputError("a Newton polyhedron needs at least one point")
        return cls(n, reduce_apexes(vecs))

    def __contains__(self, x):
        return contains(self, x)

    def is_m_primary(self):
        return all(any(a[j] > 0 and sum(a) == a[j] for a in self.apexes) for j in range(self.n))


def build_polyhedron(data):
    return NewtonPolyhedron.from_points(data.n, data.generators)


def contains(poly, x):
    x = as_vector(x)
    if len(x) != poly.n:
        raise InputError(f"point has {len(x)} coordinates, polyhedron lives in dimension {poly.n}")
    return _in_hull_plus_orthant(poly.apexes, x)


def minkowski_sum(p, q):
    if p.n != q.n:
        raise InputError("Minkowski sum of polyhedra in different dimensions")
    sums = [tuple(a + b for a, b in zip(u, v)) for u in p.apexes for v in q.apexes]
    return NewtonPolyhedron(p.n, reduce_apexes(sums))


def scale(p, t):
    t = Fraction(t)
    if t <= 0:
        raise InputError("scale factor must be positive")
    return NewtonPolyhedron(p.n, tuple(sorted(tuple(c * t for c in a) for a in p.apexes)))


def simplex_polyhedron(n, s=1, support=None):
    """``s * conv(e_j : j in support) + orthant``; the full simplex by default."""
    support = range(n) if support is None else support
    return NewtonPolyhedron(n, tuple(sorted(
        tuple(Fraction(s) if k == j else Fraction(0) for k in range(n)) for j in support)))


# --- covolume ---------------------------------------------------------------

def _rank(rows):
    M = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _chart(pts, k):
    """Coordinates that embed the affine hull of pts (dimension k) injectively."""
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    for cols in combinations(range(len(base)), k):
        if _rank([[d[c] for c in cols] for d in diffs]) == k:
            return cols
    raise AssertionError("affine hull has lower dimension than claimed")


def _faces_of(pts, k):
    """Facets of conv(pts), pts spanning an affine k-flat, as point tuples."""
    cols = _chart(pts, k)
    proj = {p: tuple(p[c] for c in cols) for p in pts}
    if k == 1:
        lo = min(pts, key=lambda p: proj[p])
        hi = max(pts, key=lambda p: proj[p])
        return [(lo,), (hi,)]
    faces = set()
    flat = list(pts)
    for combo in combinations(flat, k):
        base = proj[combo[0]]
        diffs = [tuple(a - b for a, b in zip(proj[q], base)) for q in combo[1:]]
        w = normal_vector(diffs)
        if not any(w):
            continue
        d = sum(a * b for a, b in zip(w, base))
        vals = [sum(a * b for a, b in zip(w, proj[q])) - d for q in flat]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            faces.add(tuple(sorted(q for q, v in zip(flat, vals) if v == 0)))
    return sorted(faces)


def _affine_dim(pts):
    base = pts[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in pts[1:]]) if len(pts) > 1 else 0


def pulling_triangulation(pts, k=None):
    """Simplices (k+1 points each) triangulating conv(pts), an affine k-polytope."""
    pts = sorted(set(pts))
    if k is None:
        k = _affine_dim(pts)
    if k == 0:
        return [(pts[0],)]
    apex = pts[0]
    out = []
    for face in _faces_of(pts, k):
        if apex in face:
            continue
        for simplex in pulling_triangulation(list(face), k - 1):
            out.append((apex,) + simplex)
    return out


def normalized_covolume(points):
    """n! * vol(R^n_>=0 minus Gamma) for integer generators of an m-primary Gamma.

    The complement is the union of the pyramids from the origin over the
    compact facets, so it suffices to triangulate those facets.
    """
    points = _minimal_elements([tuple(int(c) for c in p) for p in points])
    n = len(points[0])
    if n == 1:
        return min(p[0] for p in points)
    total = 0
    for row in compact_facets(points):
        w, d = row[:n], row[n]
        on = [p for p in points if sum(a * b for a, b in zip(w, p)) == d]
        for simplex in pulling_triangulation(on, n - 1):
            total += abs(_int_det([list(v) for v in simplex]))
    return total


def covolume(p):
    """Exact volume of the bounded region R^n_>=0 minus Gamma."""
    if p.n > MAX_EXACT_DIM:
        raise UnsupportedDimension(f"exact covolume is limited to n <= {MAX_EXACT_DIM}, got n = {p.n}")
    if not p.is_m_primary():
        raise InputError("covolume is infinite: some coordinate axis never meets Gamma")
    d = lcm(*(c.denominator for a in p.apexes for c in a))
    ints = [tuple(int(c * d) for c in a) for a in p.apexes]
    return Fraction(normalized_covolume(ints), factorial(p.n) * d ** p.n)
