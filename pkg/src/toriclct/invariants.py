"""Exact singularity invariants of toric (multi-circled) weights.

For ``u = log|F|`` with monomial ``F``, or ``u = max_i <a_i, log|z|>``:

* ``lelong``  -- the Lelong number ``e_1(u)``, the minimum of ``x_1 + ... + x_n`` on Gamma;
* ``l``       -- codimension of the zero locus (minimum hitting set of the supports);
* ``mixed``   -- ``e_1, ..., e_l``, the mixed Monge-Ampere masses
  ``(dd^c u)^k ^ (dd^c log|z|)^(n-k)`` at 0;
* ``lct``     -- the log canonical threshold, ``1/t`` for the smallest ``t``
  with ``(t, ..., t)`` in Gamma.

Mixed masses are read off the polynomial
``P(a, b) = n! covol(a Gamma + b Delta) = sum_k C(n, k) e_k a^k b^(n-k)``
of the m-primary regularisation ``u_N = max(u, N log|z|)``, doubling ``N``
until ``e_1..e_l`` stop moving.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd

from . import lp
from .newton import (InputError, MAX_EXACT_DIM, SingularityInput,
                     UnsupportedDimension, _minimal_elements, _rank, normalized_covolume,
                     reduce_apexes)

N_MAX_FACTOR = 2 ** 10


class StabilizationError(RuntimeError):
    """Mixed masses of u_N did not settle before N exceeded its cap."""


@dataclass(frozen=True)
class InvariantSet:
    n: int
    l: int
    lelong: Fraction
    mixed: tuple
    lct: Fraction
    N_used: int

    def e(self, k):
        """``e_k`` with the convention ``e_0 = 1``."""
        if k == 0:
            return Fraction(1)
        return self.mixed[k - 1]


def lelong_number(data):
    return min(sum(g) for g in data.generators)


def supports(data):
    return sorted({frozenset(j for j, c in enumerate(g) if c > 0) for g in data.generators},
                  key=sorted)


def minimum_hitting_sets(data):
    """All coordinate sets of minimum size meeting every generator support."""
    supp = supports(data)
    for size in range(1, data.n + 1):
        hits = [frozenset(J) for J in combinations(range(data.n), size)
                if all(s & set(J) for s in supp)]
        if hits:
            return hits
    raise AssertionError("unreachable: the full coordinate set hits every nonzero support")


def codimension(data):
    return len(minimum_hitting_sets(data)[0])


def regularize(data, N):
    """Generators of ``max(u, N log|z|)``: the input plus ``N e_j``.

    Only dominated generators are dropped, so for an ideal the result generates
    the same ideal (the lattice oracle depends on that, not just on Gamma).
    """
    if N < 1 or int(N) != N:
        raise InputError(f"regularisation parameter must be a positive integer, got {N!r}")
    axes = [tuple(N if k == j else 0 for k in range(data.n)) for j in range(data.n)]
    gens = _minimal_elements(list(data.generators) + [tuple(map(Fraction, a)) for a in axes])
    return SingularityInput(data.n, tuple(gens), data.kind, data.label)


def _solve(A, y):
    """Exact Gaussian elimination for a nonsingular square system."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(t)] for row, t in zip(A, y)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[r][n] / M[r][r] for r in range(n)]


class _MixedPolynomial:
    """Evaluates ``P(a, b)`` for one integral m-primary polyhedron, caching primitive pairs."""

    def __init__(self, points, n):
        self.points = _minimal_elements(points)
        self.n = n
        self._cache = {}

    def _primitive(self, a, b):
        key = (a, b)
        if key not in self._cache:
            n = self.n
            delta = [tuple(b if k == j else 0 for k in range(n)) for j in range(n)]
            pts = [tuple(a * p[i] + q[i] for i in range(n)) for p in self.points for q in delta]
            self._cache[key] = normalized_covolume(pts)
        return self._cache[key]

    def __call__(self, a, b):
        if a == 0 and b == 0:
            return 0
        if a == 0:
            return b ** self.n
        g = gcd(a, b)
        return g ** self.n * self._primitive(a // g, b // g)

    def coefficients(self, grid="line"):
        """``e_0, ..., e_n`` by exact interpolation of P."""
        n = self.n
        if grid == "line":
            pairs = [(1, b) for b in range(n + 1)]
        elif grid == "full":
            pairs = [(a, b) for a in range(n + 1) for b in range(n + 1) if (a, b) != (0, 0)]
        else:
            raise ValueError(f"grid must be 'line' or 'full', got {grid!r}")
        rows = [[comb(n, k) * a ** k * b ** (n - k) for k in range(n + 1)] for a, b in pairs]
        values = [self(a, b) for a, b in pairs]
        # square subsystem on the first independent rows, the rest must agree
        chosen = []
        for i in range(len(rows)):
            trial = chosen + [i]
            if _rank([rows[j] for j in trial]) == len(trial):
                chosen = trial
            if len(chosen) == n + 1:
                break
        e = _solve([rows[i] for i in chosen], [values[i] for i in chosen])
        for row, v in zip(rows, values):
            if sum(c * x for c, x in zip(row, e)) != v:
                raise ArithmeticError("covolume grid is not a homogeneous polynomial of degree n")
        return e


def mixed_multiplicities(data, n_max=None, grid="line"):
    """Return ``((e_1, ..., e_l), N_used)``, exact.

    ``N_used`` is the first N whose values matched those at 2N.
    """
    if data.n > MAX_EXACT_DIM:
        raise UnsupportedDimension(f"mixed masses need exact covolumes, limited to n <= {MAX_EXACT_DIM}")
    raw, d = data.cleared()
    gens = [tuple(int(c) for c in a) for a in reduce_apexes(raw)]
    n = data.n
    l = codimension(data)
    nu = min(sum(g) for g in gens)
    if nu == 0:
        raise InputError("Lelong number is zero; the ratios e_(k-1)/e_k are undefined")
    top = max(max(g) for g in gens)
    cap = n_max if n_max is not None else N_MAX_FACTOR * top
    N = max(sum(g) for g in gens)
    polys = {}

    def values_at(N):
        pts = _minimal_elements(gens + [tuple(N if k == j else 0 for k in range(n))
                                        for j in range(n)])
        key = tuple(pts)
        if key not in polys:
            e = _MixedPolynomial(pts, n).coefficients(grid)
            if e[0] != 1 or e[1] != min(nu, N):
                raise ArithmeticError(f"interpolation inconsistent: e_0={e[0]}, e_1={e[1]}")
            polys[key] = tuple(e[1:l + 1])
        return polys[key]

    current = values_at(N)
    while 2 * N <= cap:
        nxt = values_at(2 * N)
        if nxt == current:
            mixed = tuple(Fraction(v, d ** k) for k, v in enumerate(current, start=1))
            return mixed, N
        N, current = 2 * N, nxt
    raise StabilizationError(f"e_1..e_{l} still changing at N = {N} (cap {cap})")


def threshold_point(data):
    """Smallest t with (t, ..., t) in Gamma, by exact LP."""
    gens, d = data.cleared()
    pts = _minimal_elements(gens)
    n, m = data.n, len(pts)
    # variables: lambda_1..lambda_m, slack_1..slack_n, t
    A = []
    for j in range(n):
        A.append([p[j] for p in pts] + [1 if k == j else 0 for k in range(n)] + [-1])
    A.append([1] * m + [0] * n + [0])
    c = [0] * (m + n) + [1]
    res = lp.simplex(c, A, [0] * n + [1])
    if res.status != lp.OPTIMAL:
        raise AssertionError(f"threshold LP {res.status}; Gamma is nonempty so this cannot happen")
    return res.value / d


def lct(data):
    return 1 / threshold_point(data)


def compute_invariants(data, n_max=None, grid="line"):
    mixed, N_used = mixed_multiplicities(data, n_max=n_max, grid=grid)
    return InvariantSet(
        n=data.n,
        l=len(mixed),
        lelong=lelong_number(data),
        mixed=mixed,
        lct=lct(data),
        N_used=N_used,
    )
